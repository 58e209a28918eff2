#include "foxfree/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace foxfree {

LaurentRing::LaurentRing(int nvars, std::vector<int64_t> moduli, std::vector<int> killed)
    : nvars_(nvars), moduli_(std::move(moduli)), killed_(std::move(killed)) {
  if (moduli_.size() != static_cast<size_t>(nvars_))
    throw DomainError("laurent ring: moduli size mismatch");
  for (int64_t m : moduli_)
    if (m != 0 && m < 2) throw DomainError("laurent ring: modulus must be 0 or >= 2");
  std::sort(killed_.begin(), killed_.end());
  killed_.erase(std::unique(killed_.begin(), killed_.end()), killed_.end());
  for (int k : killed_)
    if (k < 0 || k >= nvars_) throw DomainError("laurent ring: killed variable out of range");
}

LaurentRing LaurentRing::augmentation_ring(int nvars) {
  std::vector<int> killed(static_cast<size_t>(nvars));
  for (int i = 0; i < nvars; ++i) killed[static_cast<size_t>(i)] = i;
  return LaurentRing(nvars, std::vector<int64_t>(static_cast<size_t>(nvars), 0), killed);
}

bool LaurentRing::has_torsion() const {
  return std::any_of(moduli_.begin(), moduli_.end(), [](int64_t m) { return m != 0; });
}

std::vector<int64_t> LaurentRing::reduce(std::vector<int64_t> e) const {
  if (e.size() != static_cast<size_t>(nvars_))
    throw DomainError("laurent: exponent vector dimension mismatch");
  for (size_t i = 0; i < e.size(); ++i) {
    int64_t m = moduli_[i];
    if (m == 0) continue;
    e[i] %= m;
    if (e[i] < 0) e[i] += m;
  }
  return e;
}

LaurentPoly LaurentRing::constant(Int c) const {
  LaurentPoly p;
  if (c != 0) p.terms.emplace(std::vector<int64_t>(static_cast<size_t>(nvars_), 0), std::move(c));
  return p;
}

LaurentPoly LaurentRing::monomial(std::vector<int64_t> exps, Int c) const {
  LaurentPoly p;
  if (c != 0) p.terms.emplace(reduce(std::move(exps)), std::move(c));
  return p;
}

bool LaurentRing::is_one(const Elem& a) const {
  return a.terms.size() == 1 && a.terms.begin()->second == 1 &&
         std::all_of(a.terms.begin()->first.begin(), a.terms.begin()->first.end(),
                     [](int64_t e) { return e == 0; });
}

namespace {

void accumulate(LaurentPoly& p, const std::vector<int64_t>& e, const Int& c) {
  if (c == 0) return;
  auto it = p.terms.find(e);
  if (it == p.terms.end()) {
    p.terms.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) p.terms.erase(it);
  }
}

}  // namespace

LaurentPoly LaurentRing::add(const Elem& a, const Elem& b) const {
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms) accumulate(out, e, c);
  return out;
}

LaurentPoly LaurentRing::sub(const Elem& a, const Elem& b) const {
  LaurentPoly out = a;
  for (const auto& [e, c] : b.terms) accumulate(out, e, -c);
  return out;
}

LaurentPoly LaurentRing::neg(const Elem& a) const {
  LaurentPoly out;
  for (const auto& [e, c] : a.terms) out.terms.emplace(e, -c);
  return out;
}

LaurentPoly LaurentRing::mul(const Elem& a, const Elem& b) const {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms) {
    for (const auto& [eb, cb] : b.terms) {
      std::vector<int64_t> e(static_cast<size_t>(nvars_));
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      accumulate(out, reduce(std::move(e)), ca * cb);
    }
  }
  return out;
}

LaurentPoly LaurentRing::residue(const Elem& a) const {
  LaurentPoly out;
  for (const auto& [e, c] : a.terms) {
    std::vector<int64_t> r = e;
    for (int k : killed_) r[static_cast<size_t>(k)] = 0;
    accumulate(out, r, c);
  }
  return out;
}

Valuation LaurentRing::valuation(const Elem& a) const {
  if (is_zero(a)) return {true, 0};
  if (residue_nonzero(a)) return {false, 0};

  // Delta-adic weight over the killed variables: substitute t = 1 + s there
  // (after shifting free variables to nonnegative exponents by a unit) and
  // take the least total s-degree that survives cancellation.
  std::vector<int64_t> shift(static_cast<size_t>(nvars_), 0);
  for (int k : killed_) {
    if (moduli_[static_cast<size_t>(k)] != 0) continue;  // torsion exps already >= 0
    int64_t mn = 0;
    bool first = true;
    for (const auto& [e, c] : a.terms) {
      if (first || e[static_cast<size_t>(k)] < mn) mn = e[static_cast<size_t>(k)];
      first = false;
    }
    shift[static_cast<size_t>(k)] = mn;
  }

  // Key: (exponents of surviving variables, s-exponents of killed variables).
  std::map<std::pair<std::vector<int64_t>, std::vector<int64_t>>, Int> expanded;
  for (const auto& [e, c] : a.terms) {
    std::vector<int64_t> survive = e;
    for (int k : killed_) survive[static_cast<size_t>(k)] = 0;

    std::vector<std::pair<std::vector<int64_t>, Int>> partial = {
        {std::vector<int64_t>(killed_.size(), 0), c}};
    for (size_t ki = 0; ki < killed_.size(); ++ki) {
      int k = killed_[ki];
      int64_t exp = e[static_cast<size_t>(k)] - shift[static_cast<size_t>(k)];
      // (1 + s)^exp, exp >= 0: plain binomial row.
      std::vector<Int> binom(static_cast<size_t>(exp) + 1);
      binom[0] = 1;
      for (int64_t i = 1; i <= exp; ++i)
        binom[static_cast<size_t>(i)] =
            binom[static_cast<size_t>(i - 1)] * (exp - i + 1) / i;
      std::vector<std::pair<std::vector<int64_t>, Int>> next;
      for (const auto& [sexp, coef] : partial) {
        for (int64_t i = 0; i <= exp; ++i) {
          std::vector<int64_t> se = sexp;
          se[ki] = i;
          next.emplace_back(std::move(se), coef * binom[static_cast<size_t>(i)]);
        }
      }
      partial = std::move(next);
    }
    for (auto& [sexp, coef] : partial) {
      auto key = std::make_pair(survive, std::move(sexp));
      auto it = expanded.find(key);
      if (it == expanded.end()) {
        expanded.emplace(std::move(key), coef);
      } else {
        it->second += coef;
        if (it->second == 0) expanded.erase(it);
      }
    }
  }

  bool found = false;
  int64_t best = 0;
  for (const auto& [key, coef] : expanded) {
    int64_t deg = std::accumulate(key.second.begin(), key.second.end(), int64_t(0));
    if (!found || deg < best) {
      found = true;
      best = deg;
    }
  }
  if (!found) throw DomainError("laurent valuation: nonzero element expanded to zero");
  return {false, best};
}

std::pair<LaurentPoly, LaurentPoly> LaurentRing::ore_pair(const Elem& a, const Elem& b) const {
  if (is_zero(a) || is_zero(b)) throw DomainError("ore_pair: zero input");
  return {b, a};
}

// ---------------------------------------------------------------------------
// Zero-divisor detection through characters of the torsion part.

namespace {

// Coefficient rows of cyclotomic polynomials, computed through
// x^n - 1 = prod_{d | n} Phi_d with exact monic division.
using ZPoly = std::vector<Int>;  // coefficient of x^i at index i

ZPoly zpoly_trim(ZPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

ZPoly zpoly_div_exact(ZPoly r, const ZPoly& den) {
  if (den.empty() || den.back() != 1) throw DomainError("cyclotomic division: non-monic divisor");
  if (r.size() < den.size()) {
    if (!zpoly_trim(std::move(r)).empty())
      throw DomainError("cyclotomic division: nonzero remainder");
    return {};
  }
  ZPoly q(r.size() - den.size() + 1, 0);
  for (size_t shift = q.size(); shift-- > 0;) {
    Int c = r[shift + den.size() - 1];
    if (c == 0) continue;
    q[shift] = c;
    for (size_t j = 0; j < den.size(); ++j) r[shift + j] -= c * den[j];
  }
  if (!zpoly_trim(std::move(r)).empty())
    throw DomainError("cyclotomic division: nonzero remainder");
  return q;
}

ZPoly cyclotomic(int64_t n) {
  // x^n - 1 divided by the product of all proper-divisor cyclotomics.
  ZPoly p(static_cast<size_t>(n) + 1, 0);
  p[0] = -1;
  p[static_cast<size_t>(n)] = 1;
  for (int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    p = zpoly_div_exact(p, cyclotomic(d));
  }
  return p;
}

ZPoly zpoly_mod(ZPoly p, const ZPoly& m) {
  p = zpoly_trim(std::move(p));
  while (p.size() >= m.size()) {
    Int c = p.back();
    size_t shift = p.size() - m.size();
    for (size_t j = 0; j < m.size(); ++j) p[shift + j] -= c * m[j];
    p = zpoly_trim(std::move(p));
  }
  return p;
}

}  // namespace

bool LaurentRing::is_zero_divisor(const Elem& a) const {
  if (is_zero(a) || !has_torsion()) return false;

  std::vector<int> torsion_vars;
  for (int i = 0; i < nvars_; ++i)
    if (moduli_[static_cast<size_t>(i)] != 0) torsion_vars.push_back(i);
  int64_t lcm = 1;
  for (int v : torsion_vars) lcm = std::lcm(lcm, moduli_[static_cast<size_t>(v)]);
  ZPoly phi = cyclotomic(lcm);

  // Enumerate characters t_v -> zeta_{m_v}^{k_v}; a is a zero divisor exactly
  // when some character maps it to zero in Q(zeta_lcm)[free variables].
  std::vector<int64_t> k(torsion_vars.size(), 0);
  while (true) {
    std::map<std::vector<int64_t>, ZPoly> per_free_monomial;
    for (const auto& [e, c] : a.terms) {
      std::vector<int64_t> free_part = e;
      int64_t zexp = 0;
      for (size_t i = 0; i < torsion_vars.size(); ++i) {
        int v = torsion_vars[i];
        int64_t m = moduli_[static_cast<size_t>(v)];
        zexp += e[static_cast<size_t>(v)] * k[i] * (lcm / m);
        free_part[static_cast<size_t>(v)] = 0;
      }
      zexp %= lcm;
      ZPoly& acc = per_free_monomial[free_part];
      if (acc.size() <= static_cast<size_t>(zexp)) acc.resize(static_cast<size_t>(zexp) + 1, 0);
      acc[static_cast<size_t>(zexp)] += c;
    }
    bool all_zero = true;
    for (auto& [mono, poly] : per_free_monomial) {
      if (!zpoly_mod(poly, phi).empty()) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) return true;

    size_t i = 0;
    for (; i < k.size(); ++i) {
      if (++k[i] < moduli_[static_cast<size_t>(torsion_vars[i])]) break;
      k[i] = 0;
    }
    if (i == k.size()) break;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Text form

std::string LaurentRing::format(const Elem& a) const {
  if (is_zero(a)) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : a.terms) {
    Int mag = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) out << '-';
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    std::string mono;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += 't' + std::to_string(i + 1);
      if (e[i] != 1) mono += '^' + std::to_string(e[i]);
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

LaurentPoly LaurentRing::parse(const std::string& text) const {
  LaurentPoly out;
  size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (pos == text.size()) throw DomainError("laurent parse: empty input");
  bool first = true;
  while (true) {
    skip_ws();
    if (pos == text.size()) {
      if (first) throw DomainError("laurent parse: empty input");
      break;
    }
    int sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      throw DomainError("laurent parse: expected '+' or '-' near position " +
                        std::to_string(pos));
    }
    first = false;
    skip_ws();
    Int coef = 1;
    std::vector<int64_t> exps(static_cast<size_t>(nvars_), 0);
    bool saw_piece = false;
    while (true) {
      skip_ws();
      if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        coef *= Int(text.substr(start, pos - start));
        saw_piece = true;
      } else if (pos < text.size() && text[pos] == 't') {
        ++pos;
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw DomainError("laurent parse: bad variable name");
        int var = std::stoi(text.substr(start, pos - start));
        if (var < 1 || var > nvars_) throw DomainError("laurent parse: variable t" +
                                                       std::to_string(var) + " out of range");
        int64_t exp = 1;
        if (pos < text.size() && text[pos] == '^') {
          ++pos;
          size_t estart = pos;
          if (pos < text.size() && text[pos] == '-') ++pos;
          while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
          if (estart == pos) throw DomainError("laurent parse: bad exponent");
          exp = std::stoll(text.substr(estart, pos - estart));
        }
        exps[static_cast<size_t>(var - 1)] += exp;
        saw_piece = true;
      } else {
        throw DomainError("laurent parse: expected term near position " + std::to_string(pos));
      }
      skip_ws();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        continue;
      }
      break;
    }
    if (!saw_piece) throw DomainError("laurent parse: empty term");
    accumulate(out, reduce(std::move(exps)), coef * sign);
  }
  return out;
}

}  // namespace foxfree
