#ifndef FOXFREE_MAGNUS_HPP
#define FOXFREE_MAGNUS_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "foxfree/ring.hpp"

namespace foxfree {

// Noncommutative monomial: a sequence of variable ids.
using Monomial = std::vector<int>;

// Degree-capped noncommutative polynomial; multiplication discards every
// monomial of degree > cap.  Realizes the Magnus filtration of the free
// group: x -> 1 + X truncated.
template <typename C>
class TruncatedSeries {
 public:
  explicit TruncatedSeries(int cap) : cap_(cap) {
    if (cap < 1) throw DomainError("series cap must be >= 1");
  }

  int cap() const { return cap_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, C>& terms() const { return terms_; }
  C coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? C(0) : it->second;
  }

  void add_term(const Monomial& m, const C& c) {
    if (c == 0 || static_cast<int>(m.size()) > cap_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TruncatedSeries& operator+=(const TruncatedSeries& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& rhs) {
    for (const auto& [m, c] : rhs.terms_) add_term(m, C(-c));
    return *this;
  }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    TruncatedSeries out(a.cap_);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        if (static_cast<int>(ma.size() + mb.size()) > a.cap_) continue;
        Monomial m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }

  friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

  // Lowest total degree with a nonzero term.
  std::optional<int> min_degree() const {
    std::optional<int> best;
    for (const auto& [m, c] : terms_) {
      int d = static_cast<int>(m.size());
      if (!best || d < *best) best = d;
    }
    return best;
  }

  TruncatedSeries homogeneous_part(int degree) const {
    TruncatedSeries out(cap_);
    for (const auto& [m, c] : terms_)
      if (static_cast<int>(m.size()) == degree) out.terms_.emplace(m, c);
    return out;
  }

 private:
  int cap_;
  std::map<Monomial, C> terms_;
};

using SeriesZ = TruncatedSeries<Int>;
using SeriesQ = TruncatedSeries<Rat>;

// Magnus weight of an element, or the honest truncation sentinel.
struct WeightReport {
  bool bounded = false;   // false: weight >= cap + 1 (infinite for 0)
  int weight = 0;         // valid when bounded
  Monomial witness;       // a lowest-degree monomial when bounded
  int cap = 0;

  bool at_least(int n) const { return !bounded || weight >= n; }
};

// Magnus embedding of a torsion-free word: x -> 1 + X, x^-1 -> 1 - X + X^2 -
// ...; multiplicative.  Torsion factors are rejected outright.
SeriesZ magnus_expand(const FactorTable& t, const Word& w, int cap);
SeriesZ magnus_expand(const FactorTable& t, const RingElement& u, int cap);

// Minimal total degree of the expansion (weight of u in the Delta-adic
// filtration).
WeightReport magnus_weight(const FactorTable& t, const RingElement& u, int cap);

// Lower-central-series degree: degree of expand(w) - 1.  Cross-checked
// internally against the Fox route (1 + min_j weight D_j(w)); a mismatch is a
// broken invariant and throws.
WeightReport lcs_degree(const FactorTable& t, const Word& w, int cap);
// The Fox route alone, for external comparison.
WeightReport lcs_degree_fox_route(const FactorTable& t, const Word& w, int cap);

// Does w lie in gr(F_K, gamma_{n+1} F)?  Decided through the retraction
// killing the letters outside K.
bool in_subgroup_mod_gamma(const FactorTable& t, const Word& w, const std::vector<int>& K,
                           int n);

// ---------------------------------------------------------------------------
// Free Lie algebra on the table's generators, in a Hall basis of left-normed
// basic commutators.  Lower generator ids rank higher, so brackets read
// left-to-right: weight 2 on {x1, x2} is [x1, x2], weight 3 is
// [[x1, x2], x2], [[x1, x2], x1], ...

struct HallElement {
  int weight = 1;
  int var = -1;          // leaf variable id (weight 1)
  int left = -1, right = -1;  // children indices (weight >= 2)
};

class HallBasis {
 public:
  HallBasis(const FactorTable& t, int cap);

  int cap() const { return cap_; }
  const std::vector<HallElement>& elements() const { return elements_; }
  std::vector<int> of_weight(int w) const;
  // Restriction to brackets using only the given variables.
  std::vector<int> of_weight_over(int w, const std::vector<int>& vars) const;

  SeriesZ poly(int index) const;        // bracket expanded as uv - vu
  Word group_word(const FactorTable& t, int index) const;  // [u,v] -> u^-1 v^-1 u v
  std::string display(const FactorTable& t, int index) const;
  bool uses_only(int index, const std::vector<int>& vars) const;

 private:
  int cap_;
  int nvars_;
  std::vector<HallElement> elements_;  // ordered: weight-major, then Hall order
};

// Hall-coordinate Lie vector with exact rational coefficients.
struct LieElement {
  std::map<int, Rat> coords;  // Hall element index -> coefficient

  bool is_zero() const { return coords.empty(); }
};

SeriesQ lie_to_series(const HallBasis& basis, const LieElement& x);
// Expresses a homogeneous Lie polynomial in Hall coordinates; throws if the
// series is not a Lie element of that degree.
LieElement series_to_lie(const HallBasis& basis, const SeriesQ& s, int degree);

LieElement lie_bracket(const HallBasis& basis, const LieElement& a, const LieElement& b);

// Leading Lie term: the degree-d homogeneous part of log(expand(w)) at
// d = lcs_degree(w), in Hall coordinates.
struct LeadingLie {
  bool bounded = false;  // false: degree exceeded the cap (or w == 1)
  int degree = 0;
  LieElement lie;
};
LeadingLie leading_lie(const FactorTable& t, const Word& w, int cap);

// For each degree d <= cap: dim( ideal(gens) \cap Lie<sub_vars> )_d, computed
// by exact rational rank.  Nonzero certifies a violation in the associated
// graded; zero is only bounded evidence.
std::vector<int> lie_ideal_meet_subalgebra(const FactorTable& t, const HallBasis& basis,
                                           const std::vector<LieElement>& gens,
                                           const std::vector<int>& sub_vars, int cap);

std::string format_series(const FactorTable& t, const SeriesZ& s);

}  // namespace foxfree

#endif
