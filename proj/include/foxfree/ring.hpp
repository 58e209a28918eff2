#ifndef FOXFREE_RING_HPP
#define FOXFREE_RING_HPP

#include <map>
#include <string>

#include "foxfree/ints.hpp"
#include "foxfree/quotient.hpp"
#include "foxfree/words.hpp"

namespace foxfree {

// Finitely supported integer combination of normal-form words: an element of
// Z[F].  No zero coefficients are stored; the empty map is the ring zero.
// Support is kept in canonical word order so serialization is bit-exact.
class RingElement {
 public:
  RingElement() = default;
  explicit RingElement(Word w) { terms_[std::move(w)] = 1; }
  RingElement(Word w, Int coef) {
    if (coef != 0) terms_[std::move(w)] = std::move(coef);
  }

  static RingElement zero() { return RingElement(); }
  static RingElement one() { return RingElement(Word{}); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Word, Int, WordLess>& terms() const { return terms_; }
  Int coefficient(const Word& w) const;

  void add_term(const Word& w, const Int& c);

  RingElement& operator+=(const RingElement& rhs);
  RingElement& operator-=(const RingElement& rhs);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator-(const RingElement& a);
  friend RingElement operator*(const RingElement& a, const Int& c);

  friend bool operator==(const RingElement&, const RingElement&) = default;

 private:
  std::map<Word, Int, WordLess> terms_;
};

// Bilinear extension of the group multiplication.
RingElement ring_mul(const FactorTable& t, const RingElement& a, const RingElement& b);
// Right/left translation by a single group element.
RingElement mul_word(const FactorTable& t, const RingElement& a, const Word& w);
RingElement word_mul(const FactorTable& t, const Word& w, const RingElement& a);

// Sum of coefficients: the trivializing homomorphism Z[F] -> Z.
Int augmentation(const RingElement& a);

// `coef*word` terms joined by ` + ` / ` - `, identity word printed as `1`,
// support in canonical order.  The zero element prints as `0`.
std::string format_ring(const FactorTable& t, const RingElement& a);

// Image of a ring element in Z[F/N], N = ker q: support grouped by left
// coset wN with coefficients summed.  The result is zero exactly when the
// element lies in the left ideal Z[F].(N - 1).
using CosetSum = std::map<CosetKey, Int>;

CosetSum coset_collapse(const RingElement& a, const QuotientHom& q);
bool collapse_is_zero(const CosetSum& s);

}  // namespace foxfree

#endif
