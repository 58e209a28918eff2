#ifndef FOXFREE_LAURENT_HPP
#define FOXFREE_LAURENT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "foxfree/ints.hpp"

namespace foxfree {

// Element of the group ring Z[Z^a x prod Z/m]: finitely many terms
// coefficient * t1^e1 ... tk^ek.  Exponents of a torsion variable are kept
// in [0, m).  The ring descriptor (LaurentRing) owns the moduli; elements are
// bare term maps.
struct LaurentPoly {
  std::map<std::vector<int64_t>, Int> terms;

  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;
};

// Valuation value: a nonnegative integer or infinity (only for 0).
struct Valuation {
  bool infinite = false;
  int64_t v = 0;

  friend bool operator==(const Valuation&, const Valuation&) = default;
  bool operator<=(const Valuation& o) const {
    if (infinite) return o.infinite;
    return o.infinite || v <= o.v;
  }
  std::string str() const { return infinite ? "inf" : std::to_string(v); }
};

// The valued-domain bundle for Z[F/N'] with residue map phi' killing a
// declared subset of variables (substituting t_i = 1):
//   psi(0) = inf;  psi(a) = 0 when phi'(a) != 0;
//   otherwise psi(a) = the Delta-adic weight of a, Delta the ideal generated
//   by (t_i - 1) over the killed variables.
// With torsion moduli present the ring has zero divisors; is_zero_divisor
// lets matrix code demote such pivots.
class LaurentRing {
 public:
  LaurentRing() = default;
  LaurentRing(int nvars, std::vector<int64_t> moduli, std::vector<int> killed);
  // Torsion-free ring with phi' = full augmentation (every variable killed).
  static LaurentRing augmentation_ring(int nvars);

  using Elem = LaurentPoly;

  int nvars() const { return nvars_; }
  const std::vector<int64_t>& moduli() const { return moduli_; }
  const std::vector<int>& killed() const { return killed_; }
  bool has_torsion() const;

  Elem zero() const { return {}; }
  Elem one() const { return constant(1); }
  Elem constant(Int c) const;
  Elem monomial(std::vector<int64_t> exps, Int c = 1) const;

  bool is_zero(const Elem& a) const { return a.terms.empty(); }
  bool is_one(const Elem& a) const;
  Elem add(const Elem& a, const Elem& b) const;
  Elem sub(const Elem& a, const Elem& b) const;
  Elem neg(const Elem& a) const;
  Elem mul(const Elem& a, const Elem& b) const;

  // phi'-image: substitute t_i = 1 for every killed variable.
  Elem residue(const Elem& a) const;
  bool residue_nonzero(const Elem& a) const { return !is_zero(residue(a)); }

  Valuation valuation(const Elem& a) const;

  // Right Ore pair: nonzero (c, d) with a c = b d.  Commutative
  // instantiation: (b, a).
  std::pair<Elem, Elem> ore_pair(const Elem& a, const Elem& b) const;

  // Exact: does some character of the torsion part kill a?  Always false for
  // torsion-free rings.
  bool is_zero_divisor(const Elem& a) const;

  // Text form `2*t1^-1 - 1`; variables are t1..tk, exponent 1 omitted,
  // bare integers for constant terms.  Round-trips exactly.
  std::string format(const Elem& a) const;
  Elem parse(const std::string& text) const;

 private:
  int nvars_ = 0;
  std::vector<int64_t> moduli_;  // per variable; 0 = infinite order
  std::vector<int> killed_;      // variables killed by phi', ascending

  std::vector<int64_t> reduce(std::vector<int64_t> e) const;
};

}  // namespace foxfree

#endif
