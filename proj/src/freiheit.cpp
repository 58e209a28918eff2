#include "foxfree/freiheit.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "foxfree/fox.hpp"
#include "foxfree/intlinalg.hpp"

namespace foxfree {

namespace {

// Abelianization of F/<<relators>>: Smith normal form of the stacked
// exponent rows (relators plus m_f e_f for torsion factors).  Coordinates
// with d_i = 1 are trivial and dropped.
QuotientHom derive_quotient(const FactorTable& table, const std::vector<Word>& relators) {
  size_t n = static_cast<size_t>(table.size());
  IntMat rows;
  for (const Word& r : relators) {
    std::vector<Int> row(n, 0);
    for (const Syllable& s : r.syllables) row[static_cast<size_t>(s.factor)] += s.exp;
    rows.push_back(std::move(row));
  }
  for (const FactorSpec& f : table.factors()) {
    if (f.kind != FactorKind::FiniteCyclic) continue;
    std::vector<Int> row(n, 0);
    row[static_cast<size_t>(f.id)] = f.order;
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return QuotientHom::abelianization(table);

  SmithResult s = smith_normal_form(rows);
  // Quotient coordinates: y = x V; the relation lattice becomes sum d_i e_i.
  std::vector<size_t> kept;
  std::vector<Int> moduli;
  for (size_t c = 0; c < n; ++c) {
    Int d = (static_cast<int>(c) < s.rank) ? s.diag(static_cast<int>(c)) : Int(0);
    if (d == 1) continue;  // trivial coordinate
    kept.push_back(c);
    moduli.push_back(d);
  }
  std::vector<std::vector<Int>> images(n);
  for (size_t f = 0; f < n; ++f) {
    std::vector<Int> img;
    img.reserve(kept.size());
    for (size_t c : kept) img.push_back(s.v[f][c]);
    images[f] = std::move(img);
  }
  return QuotientHom(table, std::move(moduli), std::move(images));
}

int64_t to_int64(const Int& v) {
  if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
    throw DomainError("value out of int64 range");
  return v.convert_to<int64_t>();
}

LaurentRing ring_for(const QuotientHom& q) {
  int nvars = static_cast<int>(q.target_dim());
  std::vector<int64_t> moduli;
  moduli.reserve(q.moduli().size());
  for (const Int& m : q.moduli()) moduli.push_back(to_int64(m));
  std::vector<int> killed(static_cast<size_t>(nvars));
  for (int i = 0; i < nvars; ++i) killed[static_cast<size_t>(i)] = i;
  return LaurentRing(nvars, std::move(moduli), std::move(killed));
}

LaurentPoly project(const LaurentRing& ring, const QuotientHom& q, const RingElement& u) {
  LaurentPoly out;
  for (const auto& [w, c] : u.terms()) {
    CosetKey key = q.image(w);
    std::vector<int64_t> e;
    e.reserve(key.size());
    for (const Int& v : key) e.push_back(to_int64(v));
    LaurentPoly term = ring.monomial(std::move(e), c);
    out = ring.add(out, term);
  }
  return out;
}

}  // namespace

Presentation make_presentation(FactorTable table, std::vector<Word> relators,
                               std::optional<QuotientHom> declared) {
  Presentation p;
  for (Word& r : relators) {
    r = table.normalize(r.syllables);
    if (table.cyclic_reduce(r).core.is_identity())
      throw DomainError("relator '" + table.format(r) + "' is trivial after cyclic reduction");
  }
  p.quotient_declared = declared.has_value();
  p.quotient = declared ? std::move(*declared) : derive_quotient(table, relators);
  p.table = std::move(table);
  p.relators = std::move(relators);
  for (const Word& r : p.relators)
    if (!p.quotient.in_kernel(r))
      throw DomainError("relator '" + p.table.format(r) + "' is not in the quotient kernel");
  return p;
}

// ---------------------------------------------------------------------------
// Presentation files

Presentation load_presentation(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("presentation parse: ") + e.what());
  }
  try {
    if (!j.contains("version") || j["version"].get<int>() != 1)
      throw DomainError("presentation parse: missing or unsupported version");
    std::vector<FactorSpec> factors;
    int id = 0;
    for (const auto& f : j.at("factors")) {
      FactorSpec spec;
      spec.id = id++;
      spec.name = f.at("name").get<std::string>();
      std::string kind = f.at("kind").get<std::string>();
      if (kind == "free") {
        spec.kind = FactorKind::FreeLetter;
      } else if (kind == "inf-cyclic") {
        spec.kind = FactorKind::InfiniteCyclic;
      } else if (kind == "fin-cyclic") {
        spec.kind = FactorKind::FiniteCyclic;
        spec.order = f.at("order").get<int64_t>();
      } else {
        throw DomainError("presentation parse: unknown factor kind '" + kind + "'");
      }
      factors.push_back(std::move(spec));
    }
    FactorTable table(std::move(factors));
    std::vector<Word> relators;
    for (const auto& r : j.at("relators")) relators.push_back(table.parse(r.get<std::string>()));
    std::optional<QuotientHom> declared;
    if (j.contains("quotient")) {
      const auto& q = j["quotient"];
      std::vector<Int> moduli;
      for (const auto& m : q.at("moduli")) moduli.push_back(Int(m.get<int64_t>()));
      std::vector<std::vector<Int>> images;
      for (const auto& img : q.at("images")) {
        std::vector<Int> v;
        for (const auto& e : img) v.push_back(Int(e.get<int64_t>()));
        images.push_back(std::move(v));
      }
      declared = QuotientHom(table, std::move(moduli), std::move(images));
    }
    return make_presentation(std::move(table), std::move(relators), std::move(declared));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("presentation parse: ") + e.what());
  }
}

std::string save_presentation(const Presentation& p) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["factors"] = nlohmann::ordered_json::array();
  for (const FactorSpec& f : p.table.factors()) {
    nlohmann::ordered_json fj;
    fj["name"] = f.name;
    switch (f.kind) {
      case FactorKind::FreeLetter:
        fj["kind"] = "free";
        break;
      case FactorKind::InfiniteCyclic:
        fj["kind"] = "inf-cyclic";
        break;
      case FactorKind::FiniteCyclic:
        fj["kind"] = "fin-cyclic";
        fj["order"] = f.order;
        break;
    }
    j["factors"].push_back(std::move(fj));
  }
  j["relators"] = nlohmann::ordered_json::array();
  for (const Word& r : p.relators) j["relators"].push_back(p.table.format(r));
  if (p.quotient_declared) {
    nlohmann::ordered_json qj;
    qj["moduli"] = nlohmann::ordered_json::array();
    for (const Int& m : p.quotient.moduli()) qj["moduli"].push_back(to_int64(m));
    qj["images"] = nlohmann::ordered_json::array();
    for (const auto& img : p.quotient.images()) {
      nlohmann::ordered_json v = nlohmann::ordered_json::array();
      for (const Int& e : img) v.push_back(to_int64(e));
      qj["images"].push_back(std::move(v));
    }
    j["quotient"] = std::move(qj);
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Selection

Jacobian jacobian_abelianized(const Presentation& p) {
  Jacobian out;
  out.ring = ring_for(p.quotient);
  out.matrix.rows = p.relator_count();
  out.matrix.cols = p.generators();
  out.matrix.a.assign(static_cast<size_t>(out.matrix.rows), {});
  for (int i = 0; i < out.matrix.rows; ++i) {
    auto& row = out.matrix.a[static_cast<size_t>(i)];
    row.reserve(static_cast<size_t>(out.matrix.cols));
    for (int j = 0; j < out.matrix.cols; ++j)
      row.push_back(project(out.ring, p.quotient, derivative(p.table, j, p.relators[static_cast<size_t>(i)])));
  }
  return out;
}

SelectionReport select_free_subset(const Presentation& p) {
  int n = p.generators(), m = p.relator_count();
  if (m >= n)
    throw DomainError("select_free_subset: need fewer relators than generators (m < n)");

  SelectionReport report;
  report.jacobian = jacobian_abelianized(p);
  report.torsion = report.jacobian.ring.has_torsion();

  if (m == 0) {
    report.rank = 0;
    report.triangular = report.jacobian.matrix;
    for (int j = 0; j < n; ++j) report.J.push_back(j);
    return report;
  }

  Triangularization<LaurentRing> tri = triangularize(report.jacobian.ring, report.jacobian.matrix);
  report.rank = tri.rank;
  report.log = std::move(tri.log);
  report.triangular = std::move(tri.matrix);
  report.torsion |= tri.zero_divisor_pivot;

  std::vector<int> col_of(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) col_of[static_cast<size_t>(j)] = j;
  for (const auto& step : report.log)
    if (step.kind == StepKind::SwapCols)
      std::swap(col_of[static_cast<size_t>(step.i)], col_of[static_cast<size_t>(step.j)]);
  report.pivots.assign(col_of.begin(), col_of.begin() + report.rank);
  std::sort(report.pivots.begin(), report.pivots.end());
  for (int j = 0; j < n; ++j)
    if (!std::binary_search(report.pivots.begin(), report.pivots.end(), j))
      report.J.push_back(j);

  if (static_cast<int>(report.J.size()) < n - m)
    throw DomainError("select_free_subset: |J| >= n - m violated");
  return report;
}

// ---------------------------------------------------------------------------
// One-relator criteria

namespace {

std::optional<int> lcs_stratum_in_kernel_basis(const FactorTable& t, const QuotientHom& q,
                                               const Word& r) {
  if (!t.torsion_free() || !q.in_kernel(r)) return std::nullopt;
  int64_t len = t.letter_length(r);
  if (len == 0 || len > 8 || t.size() > 5) return std::nullopt;  // desk-scale guard
  Transversal trans(t, q, {}, static_cast<int>(len) + 1);
  std::vector<std::pair<int, int64_t>> expr = trans.rewrite(r);
  if (expr.empty()) return std::nullopt;

  // r as a word over the finitely many Schreier generators it uses.
  std::vector<int> used;
  for (const auto& [idx, e] : expr) used.push_back(idx);
  std::sort(used.begin(), used.end());
  used.erase(std::unique(used.begin(), used.end()), used.end());
  std::vector<std::string> names;
  names.reserve(used.size());
  for (size_t i = 0; i < used.size(); ++i) names.push_back("n" + std::to_string(i));
  FactorTable fresh = FactorTable::free_letters(names);
  std::vector<Syllable> raw;
  for (const auto& [idx, e] : expr) {
    int local = static_cast<int>(std::lower_bound(used.begin(), used.end(), idx) - used.begin());
    raw.push_back({local, e});
  }
  Word rewritten = fresh.normalize(raw);
  const int cap = 8;
  WeightReport w = lcs_degree(fresh, rewritten, cap);
  if (!w.bounded) return std::nullopt;
  return w.weight;
}

}  // namespace

CriterionReport one_relator_criterion(const Word& r, const std::vector<int>& P,
                                      const Presentation& p) {
  if (r.is_identity()) throw DomainError("one_relator_criterion: trivial relator");
  for (int id : P)
    if (id < 0 || id >= p.generators())
      throw DomainError("one_relator_criterion: unknown factor id in P");
  if (static_cast<int>(P.size()) >= p.generators())
    throw DomainError("one_relator_criterion: P must be a proper subset of the factors");

  CriterionReport report;
  Word core = p.table.cyclic_reduce(r).core;
  auto in_p = [&](int id) { return std::find(P.begin(), P.end(), id) != std::end(P); };
  for (const Syllable& s : core.syllables)
    if (!in_p(s.factor)) report.syllable_test = true;

  QuotientHom ab = QuotientHom::abelianization(p.table);
  LaurentRing ring = ring_for(ab);
  for (int k = 0; k < p.generators(); ++k) {
    if (in_p(k)) continue;
    if (!ring.is_zero(project(ring, ab, derivative(p.table, k, r)))) {
      report.fox_test = true;
      break;
    }
  }

  report.lcs_stratum = lcs_stratum_in_kernel_basis(p.table, ab, r);

  if (!report.syllable_test) {
    report.verdict = CriterionVerdict::Fail;
  } else if (report.fox_test) {
    report.verdict = CriterionVerdict::Pass;
  } else {
    report.verdict = CriterionVerdict::Inconclusive;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Bounded falsification

Word Counterexample::replay(const Presentation& p) const {
  Word w;
  for (const ConjugateFactor& f : certificate) {
    Word r = p.relators.at(static_cast<size_t>(f.relator));
    if (f.sign < 0) r = p.table.invert(r);
    w = p.table.mul(w, p.table.conj(r, f.conjugator));
  }
  return w;
}

namespace {

std::vector<Word> enumerate_conjugators(const FactorTable& t, int max_len) {
  // All distinct normal forms of letter-length <= max_len, in canonical
  // (length, word) order.
  std::vector<Word> all = {Word{}};
  std::set<Word, WordLess> seen = {Word{}};
  std::vector<Word> frontier = {Word{}};
  std::vector<Syllable> steps;
  for (const FactorSpec& f : t.factors()) {
    if (f.kind == FactorKind::FiniteCyclic) {
      for (int64_t e = 1; e < f.order; ++e) steps.push_back({f.id, e});
    } else {
      steps.push_back({f.id, 1});
      steps.push_back({f.id, -1});
    }
  }
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (const Syllable& s : steps) {
        Word m = t.mul(w, Word{{s}});
        if (t.letter_length(m) != len || seen.count(m)) continue;
        seen.insert(m);
        next.push_back(std::move(m));
      }
    }
    std::sort(next.begin(), next.end(), word_less);
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return all;
}

}  // namespace

FalsifyResult falsify_freeness(const Presentation& p, const std::vector<int>& J,
                               const FalsifyBounds& bounds) {
  for (int id : J)
    if (id < 0 || id >= p.generators()) throw DomainError("falsify_freeness: unknown id in J");
  FalsifyResult result;
  if (p.relators.empty()) return result;

  auto in_h = [&](const Word& w) {
    for (const Syllable& s : w.syllables)
      if (std::find(J.begin(), J.end(), s.factor) == J.end()) return false;
    return true;
  };

  // Stage 1: products of conjugated relator powers, canonical enumeration
  // order, first hit wins.
  std::vector<Word> conjugators = enumerate_conjugators(p.table, bounds.max_conj_len);
  struct Slot {
    Counterexample::ConjugateFactor factor;
    Word value;
  };
  std::vector<Slot> slots;
  for (int k = 0; k < p.relator_count(); ++k) {
    for (int sign : {+1, -1}) {
      Word base = sign > 0 ? p.relators[static_cast<size_t>(k)]
                           : p.table.invert(p.relators[static_cast<size_t>(k)]);
      for (const Word& f : conjugators)
        slots.push_back({{k, sign, f}, p.table.conj(base, f)});
    }
  }

  bool exhausted = false;
  std::vector<Counterexample::ConjugateFactor> chosen;
  std::function<bool(const Word&, int)> search = [&](const Word& acc, int depth) -> bool {
    if (depth >= bounds.max_conjugators) return false;
    for (const Slot& slot : slots) {
      if (result.steps >= bounds.step_budget) {
        exhausted = true;
        return false;
      }
      ++result.steps;
      Word w = p.table.mul(acc, slot.value);
      chosen.push_back(slot.factor);
      if (!w.is_identity() && p.table.letter_length(w) <= bounds.max_word_len && in_h(w)) {
        Counterexample cex;
        cex.kind = Counterexample::Kind::Enumeration;
        cex.witness = w;
        cex.certificate = chosen;
        result.status = FalsifyResult::Status::Found;
        result.counterexample = std::move(cex);
        return true;
      }
      if (search(w, depth + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  if (search(Word{}, 0)) return result;
  if (exhausted) {
    result.status = FalsifyResult::Status::BudgetExceeded;
    return result;
  }

  // Stage 2: leading-Lie-term ideal against the J-subalgebra.
  if (p.table.torsion_free() && bounds.lie_cap >= 1) {
    HallBasis basis(p.table, bounds.lie_cap);
    std::vector<LieElement> gens;
    for (const Word& r : p.relators) {
      LeadingLie lead = leading_lie(p.table, r, bounds.lie_cap);
      if (lead.bounded) gens.push_back(lead.lie);
    }
    std::vector<int> dims = lie_ideal_meet_subalgebra(p.table, basis, gens, J, bounds.lie_cap);
    for (int d = 1; d <= bounds.lie_cap; ++d) {
      int dim = dims[static_cast<size_t>(d - 1)];
      if (dim > 0) {
        Counterexample cex;
        cex.kind = Counterexample::Kind::LieDegree;
        cex.lie_degree = d;
        cex.lie_dimension = dim;
        result.status = FalsifyResult::Status::Found;
        result.counterexample = std::move(cex);
        return result;
      }
    }
  }
  return result;
}

std::string format_selection(const SelectionReport& r, const Presentation& p) {
  std::ostringstream out;
  out << "rank = " << r.rank << '\n';
  auto name_list = [&](const std::vector<int>& ids) {
    std::string s = "{";
    for (size_t i = 0; i < ids.size(); ++i) {
      if (i) s += ", ";
      s += p.table.factor(ids[i]).name;
    }
    return s + "}";
  };
  out << "I = " << name_list(r.pivots) << '\n';
  out << "J = " << name_list(r.J) << '\n';
  out << "torsion = " << (r.torsion ? "yes" : "no") << '\n';
  out << "jacobian = " << format_matrix(r.jacobian.ring, r.jacobian.matrix) << '\n';
  out << "triangular = " << format_matrix(r.jacobian.ring, r.triangular) << '\n';
  out << "log:\n" << format_log(r.jacobian.ring, r.log);
  return out.str();
}

}  // namespace foxfree
