#ifndef FOXFREE_WORDS_HPP
#define FOXFREE_WORDS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "foxfree/ints.hpp"

namespace foxfree {

// The universe is a free product of cyclic factors and free letters.
// Free letters and infinite-cyclic factors carry the same word arithmetic;
// they differ only in the Fox derivative rule (D(g) = 1 vs D(a) = a - 1).
enum class FactorKind { FreeLetter, InfiniteCyclic, FiniteCyclic };

struct FactorSpec {
  int id = 0;
  FactorKind kind = FactorKind::FreeLetter;
  int64_t order = 0;  // >= 2 for FiniteCyclic, 0 otherwise
  std::string name;
};

// One maximal run of a single factor.  Exponents are nonzero; finite-cyclic
// exponents are reduced into [1, order-1].
struct Syllable {
  int factor = 0;
  int64_t exp = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// Normal-form element of the free product: alternating nontrivial syllables.
// The empty word is the identity.  Words are immutable values; all factor
// context lives in FactorTable.
struct Word {
  std::vector<Syllable> syllables;

  bool is_identity() const { return syllables.empty(); }
  size_t size() const { return syllables.size(); }

  friend bool operator==(const Word&, const Word&) = default;
};

// Canonical ordering: shortlex on (syllable count, factor id, exponent sign,
// |exponent|).  Positive exponents sort before negative.
bool word_less(const Word& a, const Word& b);

struct WordLess {
  bool operator()(const Word& a, const Word& b) const { return word_less(a, b); }
};

class FactorTable {
 public:
  FactorTable() = default;
  explicit FactorTable(std::vector<FactorSpec> factors);

  static FactorTable free_letters(const std::vector<std::string>& names);

  int size() const { return static_cast<int>(factors_.size()); }
  const FactorSpec& factor(int id) const;
  const std::vector<FactorSpec>& factors() const { return factors_; }
  bool has_name(const std::string& name) const;
  int id_of(const std::string& name) const;
  bool torsion_free() const;

  // Unique normal form; idempotent.  Unknown factor ids are rejected.
  Word normalize(const std::vector<Syllable>& raw) const;

  Word mul(const Word& u, const Word& v) const;
  Word invert(const Word& u) const;
  Word pow(const Word& u, int64_t k) const;
  // conj(w, f) = f^-1 w f, matching the paper's x^y = y^-1 x y.
  Word conj(const Word& w, const Word& f) const;
  // [u, v] = u^-1 v^-1 u v.
  Word commutator(const Word& u, const Word& v) const;

  Word letter(int factor, int64_t exp = 1) const;

  // u = conjugator * core * conjugator^-1 with core cyclically reduced.
  struct CyclicReduction {
    Word core;
    Word conjugator;
  };
  CyclicReduction cyclic_reduce(const Word& u) const;

  // Retraction killing every factor outside K (a free-product endomorphism).
  Word retract(const Word& w, const std::vector<int>& keep) const;

  // Single-step letters: one +-1 step for torsion-free factors, one element
  // a^e (e in [1, order-1]) for finite-cyclic factors.
  std::vector<Syllable> letters(const Word& w) const;
  int64_t letter_length(const Word& w) const;
  // Drops the final letter (empty word input is rejected).
  Word drop_last_letter(const Word& w) const;

  // Space-separated `name^k` tokens, k omitted when 1; "" is the identity.
  std::string format(const Word& w) const;
  Word parse(const std::string& text) const;

 private:
  std::vector<FactorSpec> factors_;

  void check_id(int id) const;
  // Pushes one syllable onto a normal-form stack, merging/cancelling.
  void push_syllable(std::vector<Syllable>& stack, const Syllable& s) const;
  int64_t reduce_exp(int factor, int64_t e) const;
};

}  // namespace foxfree

#endif
