#include "foxfree/magnus.hpp"

#include <algorithm>
#include <sstream>

#include "foxfree/fox.hpp"

namespace foxfree {

namespace {

void reject_torsion(const FactorTable& t, const Word& w) {
  for (const Syllable& s : w.syllables)
    if (t.factor(s.factor).kind == FactorKind::FiniteCyclic)
      throw DomainError("magnus: torsion factor '" + t.factor(s.factor).name +
                        "' is not supported; route through a free basis first");
}

// (1 + X)^e truncated: generalized binomial coefficients, exact over Z.
SeriesZ letter_series(int var, int64_t e, int cap) {
  SeriesZ out(cap);
  Int coef = 1;
  Monomial m;
  out.add_term(m, coef);
  for (int i = 1; i <= cap; ++i) {
    coef *= Int(e) - (i - 1);
    coef /= i;
    if (coef == 0) break;
    m.push_back(var);
    out.add_term(m, coef);
  }
  return out;
}

WeightReport report_from_series(const SeriesZ& s, int cap) {
  WeightReport r;
  r.cap = cap;
  std::optional<int> d = s.min_degree();
  if (!d) return r;
  r.bounded = true;
  r.weight = *d;
  for (const auto& [m, c] : s.terms()) {
    if (static_cast<int>(m.size()) == *d) {
      r.witness = m;
      break;
    }
  }
  return r;
}

}  // namespace

SeriesZ magnus_expand(const FactorTable& t, const Word& w, int cap) {
  reject_torsion(t, w);
  SeriesZ out(cap);
  out.add_term({}, 1);
  for (const Syllable& s : w.syllables) out = out * letter_series(s.factor, s.exp, cap);
  return out;
}

SeriesZ magnus_expand(const FactorTable& t, const RingElement& u, int cap) {
  SeriesZ out(cap);
  for (const auto& [w, c] : u.terms()) {
    SeriesZ e = magnus_expand(t, w, cap);
    for (const auto& [m, k] : e.terms()) out.add_term(m, k * c);
  }
  return out;
}

WeightReport magnus_weight(const FactorTable& t, const RingElement& u, int cap) {
  return report_from_series(magnus_expand(t, u, cap), cap);
}

WeightReport lcs_degree_fox_route(const FactorTable& t, const Word& w, int cap) {
  // Lemma route: w has LCS degree n iff every D_j(w) has weight >= n - 1 and
  // some D_{j0}(w) has weight exactly n - 1.
  WeightReport r;
  r.cap = cap;
  std::optional<int> best;
  Monomial witness;
  for (int j = 0; j < t.size(); ++j) {
    RingElement d = derivative(t, j, w);
    if (d.is_zero()) continue;
    WeightReport wj = magnus_weight(t, d, cap);
    if (!wj.bounded) continue;
    if (!best || wj.weight < *best) {
      best = wj.weight;
      witness = wj.witness;
      witness.insert(witness.begin(), j);
    }
  }
  if (best && *best + 1 <= cap) {
    r.bounded = true;
    r.weight = *best + 1;
    r.witness = witness;
  }
  return r;
}

WeightReport lcs_degree(const FactorTable& t, const Word& w, int cap) {
  SeriesZ e = magnus_expand(t, w, cap);
  e.add_term({}, -1);
  WeightReport direct = report_from_series(e, cap);

  WeightReport fox = lcs_degree_fox_route(t, w, cap);
  if (direct.bounded != fox.bounded || (direct.bounded && direct.weight != fox.weight))
    throw DomainError("lcs_degree: Magnus and Fox routes disagree on '" + t.format(w) + "'");
  return direct;
}

bool in_subgroup_mod_gamma(const FactorTable& t, const Word& w, const std::vector<int>& K,
                           int n) {
  if (n < 1) throw DomainError("in_subgroup_mod_gamma: n must be >= 1");
  Word retracted = t.retract(w, K);
  Word quotient = t.mul(w, t.invert(retracted));
  WeightReport r = lcs_degree(t, quotient, n + 1);
  return r.at_least(n + 1);
}

// ---------------------------------------------------------------------------
// Hall basis

HallBasis::HallBasis(const FactorTable& t, int cap) : cap_(cap), nvars_(t.size()) {
  if (cap < 1 || cap > 8) throw DomainError("hall basis cap must be in [1, 8]");
  // Leaves in descending variable id: lower ids rank higher in the Hall
  // order, which makes basic commutators read left-to-right.
  for (int v = nvars_ - 1; v >= 0; --v) {
    if (t.factor(v).kind == FactorKind::FiniteCyclic)
      throw DomainError("hall basis requires a torsion-free table");
    elements_.push_back({1, v, -1, -1});
  }
  for (int w = 2; w <= cap; ++w) {
    size_t before = elements_.size();
    for (size_t v = 0; v < before; ++v) {
      for (size_t u = v + 1; u < before; ++u) {
        if (elements_[u].weight + elements_[v].weight != w) continue;
        // Hall condition: u > v and (u a leaf or right(u) <= v).
        if (elements_[u].weight > 1 &&
            static_cast<size_t>(elements_[u].right) > v)
          continue;
        elements_.push_back({w, -1, static_cast<int>(u), static_cast<int>(v)});
      }
    }
  }
}

std::vector<int> HallBasis::of_weight(int w) const {
  std::vector<int> out;
  for (size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].weight == w) out.push_back(static_cast<int>(i));
  return out;
}

bool HallBasis::uses_only(int index, const std::vector<int>& vars) const {
  const HallElement& e = elements_[static_cast<size_t>(index)];
  if (e.weight == 1)
    return std::find(vars.begin(), vars.end(), e.var) != vars.end();
  return uses_only(e.left, vars) && uses_only(e.right, vars);
}

std::vector<int> HallBasis::of_weight_over(int w, const std::vector<int>& vars) const {
  std::vector<int> out;
  for (int i : of_weight(w))
    if (uses_only(i, vars)) out.push_back(i);
  return out;
}

SeriesZ HallBasis::poly(int index) const {
  const HallElement& e = elements_[static_cast<size_t>(index)];
  if (e.weight == 1) {
    SeriesZ s(cap_);
    s.add_term({e.var}, 1);
    return s;
  }
  SeriesZ l = poly(e.left), r = poly(e.right);
  return l * r - r * l;
}

Word HallBasis::group_word(const FactorTable& t, int index) const {
  const HallElement& e = elements_[static_cast<size_t>(index)];
  if (e.weight == 1) return t.letter(e.var);
  return t.commutator(group_word(t, e.left), group_word(t, e.right));
}

std::string HallBasis::display(const FactorTable& t, int index) const {
  const HallElement& e = elements_[static_cast<size_t>(index)];
  if (e.weight == 1) return t.factor(e.var).name;
  return "[" + display(t, e.left) + "," + display(t, e.right) + "]";
}

// ---------------------------------------------------------------------------
// Rational linear algebra on monomial coordinates

namespace {

using QRow = std::vector<Rat>;

// Row-reduces in place; returns the rank.
int row_reduce(std::vector<QRow>& rows) {
  if (rows.empty()) return 0;
  size_t cols = rows[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows.size(); ++c) {
    size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][c] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    Rat inv = rows[r][c];
    for (size_t j = c; j < cols; ++j) rows[r][j] /= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (size_t j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

std::vector<Monomial> collect_monomials(const std::vector<SeriesQ>& polys) {
  std::vector<Monomial> mons;
  for (const SeriesQ& p : polys)
    for (const auto& [m, c] : p.terms()) mons.push_back(m);
  std::sort(mons.begin(), mons.end());
  mons.erase(std::unique(mons.begin(), mons.end()), mons.end());
  return mons;
}

QRow to_row(const SeriesQ& p, const std::vector<Monomial>& mons) {
  QRow row(mons.size(), Rat(0));
  for (const auto& [m, c] : p.terms()) {
    auto it = std::lower_bound(mons.begin(), mons.end(), m);
    row[static_cast<size_t>(it - mons.begin())] = c;
  }
  return row;
}

SeriesQ to_rational(const SeriesZ& s) {
  SeriesQ out(s.cap());
  for (const auto& [m, c] : s.terms()) out.add_term(m, Rat(c));
  return out;
}

int rank_of(const std::vector<SeriesQ>& polys) {
  std::vector<Monomial> mons = collect_monomials(polys);
  if (mons.empty()) return 0;
  std::vector<QRow> rows;
  rows.reserve(polys.size());
  for (const SeriesQ& p : polys) rows.push_back(to_row(p, mons));
  return row_reduce(rows);
}

}  // namespace

SeriesQ lie_to_series(const HallBasis& basis, const LieElement& x) {
  SeriesQ out(basis.cap());
  for (const auto& [h, c] : x.coords) {
    SeriesQ p = to_rational(basis.poly(h));
    for (const auto& [m, k] : p.terms()) out.add_term(m, k * c);
  }
  return out;
}

LieElement series_to_lie(const HallBasis& basis, const SeriesQ& s, int degree) {
  std::vector<int> hall = basis.of_weight(degree);
  std::vector<SeriesQ> polys;
  polys.reserve(hall.size() + 1);
  for (int h : hall) polys.push_back(to_rational(basis.poly(h)));
  SeriesQ target = s.homogeneous_part(degree);
  polys.push_back(target);

  std::vector<Monomial> mons = collect_monomials(polys);
  // Augmented system: columns are Hall coordinates, last column the target.
  std::vector<QRow> rows(mons.size(), QRow(hall.size() + 1, Rat(0)));
  for (size_t j = 0; j < polys.size(); ++j) {
    for (const auto& [m, c] : polys[j].terms()) {
      auto it = std::lower_bound(mons.begin(), mons.end(), m);
      rows[static_cast<size_t>(it - mons.begin())][j] = c;
    }
  }
  // Gaussian elimination, solving for the Hall coordinates.
  size_t r = 0;
  std::vector<long> pivot_col(hall.size(), -1);
  for (size_t c = 0; c < hall.size() && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rat inv = rows[r][c];
    for (size_t j = c; j <= hall.size(); ++j) rows[r][j] /= inv;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Rat f = rows[i][c];
      for (size_t j = c; j <= hall.size(); ++j) rows[i][j] -= f * rows[r][j];
    }
    pivot_col[c] = static_cast<long>(r);
    ++r;
  }
  // Rows without a pivot must have zero on the right-hand side.
  for (size_t i = r; i < rows.size(); ++i)
    if (rows[i][hall.size()] != 0)
      throw DomainError("series_to_lie: series is not a Lie element at degree " +
                        std::to_string(degree));
  LieElement out;
  for (size_t c = 0; c < hall.size(); ++c) {
    if (pivot_col[c] < 0) continue;
    Rat v = rows[static_cast<size_t>(pivot_col[c])][hall.size()];
    if (v != 0) out.coords[hall[c]] = v;
  }
  return out;
}

LieElement lie_bracket(const HallBasis& basis, const LieElement& a, const LieElement& b) {
  SeriesQ sa = lie_to_series(basis, a);
  SeriesQ sb = lie_to_series(basis, b);
  SeriesQ c = sa * sb - sb * sa;
  LieElement out;
  for (int d = 1; d <= basis.cap(); ++d) {
    SeriesQ part = c.homogeneous_part(d);
    if (part.is_zero()) continue;
    LieElement piece = series_to_lie(basis, part, d);
    for (const auto& [h, v] : piece.coords) {
      auto it = out.coords.find(h);
      if (it == out.coords.end()) {
        out.coords.emplace(h, v);
      } else {
        it->second += v;
        if (it->second == 0) out.coords.erase(it);
      }
    }
  }
  return out;
}

LeadingLie leading_lie(const FactorTable& t, const Word& w, int cap) {
  LeadingLie out;
  WeightReport d = lcs_degree(t, w, cap);
  if (!d.bounded) return out;

  SeriesQ z = to_rational(magnus_expand(t, w, cap));
  z.add_term({}, Rat(-1));
  // log(1 + Z) = Z - Z^2/2 + Z^3/3 - ...
  SeriesQ log(cap);
  SeriesQ power = z;
  for (int k = 1; k <= cap; ++k) {
    Rat coef = Rat(k % 2 == 1 ? 1 : -1, k);
    for (const auto& [m, c] : power.terms()) log.add_term(m, c * coef);
    if (k < cap) power = power * z;
  }
  HallBasis basis(t, cap);
  out.bounded = true;
  out.degree = d.weight;
  out.lie = series_to_lie(basis, log.homogeneous_part(d.weight), d.weight);
  return out;
}

std::vector<int> lie_ideal_meet_subalgebra(const FactorTable& t, const HallBasis& basis,
                                           const std::vector<LieElement>& gens,
                                           const std::vector<int>& sub_vars, int cap) {
  if (cap > basis.cap()) throw DomainError("lie_ideal_meet_subalgebra: cap exceeds basis cap");
  // Homogeneity check, and generators bucketed by degree.
  std::vector<std::vector<SeriesQ>> gens_by_degree(static_cast<size_t>(cap) + 1);
  for (const LieElement& g : gens) {
    if (g.is_zero()) continue;
    int deg = -1;
    for (const auto& [h, c] : g.coords) {
      int w = basis.elements()[static_cast<size_t>(h)].weight;
      if (deg == -1) deg = w;
      if (w != deg) throw DomainError("lie_ideal_meet_subalgebra: non-homogeneous generator");
    }
    if (deg <= cap) gens_by_degree[static_cast<size_t>(deg)].push_back(lie_to_series(basis, g));
  }

  std::vector<int> dims(static_cast<size_t>(cap) + 1, 0);
  std::vector<SeriesQ> ideal_prev;  // reduced spanning set of I_{d-1}
  for (int d = 1; d <= cap; ++d) {
    std::vector<SeriesQ> span = gens_by_degree[static_cast<size_t>(d)];
    // [I_{d-1}, L_1] spans the rest of I_d (brackets with higher-degree
    // elements reduce to iterated degree-1 brackets by Jacobi).
    for (const SeriesQ& b : ideal_prev) {
      for (int v = 0; v < t.size(); ++v) {
        SeriesQ x(basis.cap());
        x.add_term({v}, Rat(1));
        SeriesQ br = b * x - x * b;
        if (!br.is_zero()) span.push_back(std::move(br));
      }
    }
    // Reduce the ideal span to a basis.
    std::vector<SeriesQ> ideal_basis;
    if (!span.empty()) {
      std::vector<Monomial> mons = collect_monomials(span);
      std::vector<QRow> rows;
      for (const SeriesQ& p : span) rows.push_back(to_row(p, mons));
      int rk = row_reduce(rows);
      for (int i = 0; i < rk; ++i) {
        SeriesQ p(basis.cap());
        for (size_t j = 0; j < mons.size(); ++j)
          if (rows[static_cast<size_t>(i)][j] != 0)
            p.add_term(mons[j], rows[static_cast<size_t>(i)][j]);
        ideal_basis.push_back(std::move(p));
      }
    }

    std::vector<SeriesQ> sub;
    for (int h : basis.of_weight_over(d, sub_vars)) sub.push_back(to_rational(basis.poly(h)));

    int dim_i = static_cast<int>(ideal_basis.size());
    int dim_u = rank_of(sub);
    std::vector<SeriesQ> joint = ideal_basis;
    joint.insert(joint.end(), sub.begin(), sub.end());
    int dim_sum = rank_of(joint);
    dims[static_cast<size_t>(d)] = dim_i + dim_u - dim_sum;

    ideal_prev = std::move(ideal_basis);
  }
  dims.erase(dims.begin());  // degree-indexed from 1
  return dims;
}

std::string format_series(const FactorTable& t, const SeriesZ& s) {
  if (s.is_zero()) return "0";
  std::vector<std::pair<Monomial, Int>> terms(s.terms().begin(), s.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms) {
    Int mag = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out << '-';
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    std::string mono;
    for (size_t i = 0; i < m.size(); ++i) {
      if (i) mono += ' ';
      mono += t.factor(m[i]).name;
    }
    if (mono.empty()) {
      out << mag;
    } else if (mag == 1) {
      out << mono;
    } else {
      out << mag << '*' << mono;
    }
  }
  return out.str();
}

}  // namespace foxfree
