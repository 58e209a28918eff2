#ifndef FOXFREE_SCHREIER_HPP
#define FOXFREE_SCHREIER_HPP

#include <map>
#include <string>
#include <vector>

#include "foxfree/quotient.hpp"
#include "foxfree/words.hpp"

namespace foxfree {

enum class CosetTag { Alpha, Beta };

// Radius-bounded Schreier coset table for F modulo N = ker q.  Tags are
// decided exactly by lattice membership; representatives come from a two
// phase BFS, H-letters first, so an alpha class whose shortest H-word fits
// in the radius gets a representative inside H.  The representative set is
// closed under dropping the last letter.
class Transversal {
 public:
  Transversal(const FactorTable& table, QuotientHom q, std::vector<int> P, int radius);

  const FactorTable& table() const { return *table_; }
  const QuotientHom& quotient() const { return q_; }
  const std::vector<int>& subset_p() const { return p_; }
  int radius() const { return radius_; }

  bool explored(const CosetKey& key) const { return reps_.count(key) != 0; }
  const Word& rep(const CosetKey& key) const;
  CosetTag tag(const CosetKey& key) const;
  const std::map<CosetKey, Word>& reps() const { return reps_; }

  // Nontrivial Schreier generators s x (overline{s x})^-1 for positive
  // letters x, enumerated in canonical (coset key, letter) order over the
  // explored table.
  const std::vector<Word>& generators() const { return gens_; }
  int generator_index(const Word& g) const;

  // Reidemeister-Schreier scan of a kernel word: emits (generator index,
  // exponent) with the defining property that the product of the emitted
  // generators equals w exactly.
  std::vector<std::pair<int, int64_t>> rewrite(const Word& w) const;

  std::string dump() const;  // one line per coset: `key | rep | tag`

 private:
  const FactorTable* table_;
  QuotientHom q_;
  std::vector<int> p_;
  int radius_;
  std::map<CosetKey, Word> reps_;
  std::map<CosetKey, CosetTag> tags_;
  std::vector<Word> gens_;
  std::map<Word, int, WordLess> gen_index_;

  std::vector<Syllable> positive_letters(bool restrict_to_p) const;
  void build();
  void register_generators();
};

Transversal build_transversal(const FactorTable& table, const QuotientHom& q,
                              const std::vector<int>& P, int radius);

CosetTag classify_coset(const CosetKey& key, const Transversal& t);

}  // namespace foxfree

#endif
