#ifndef FOXFREE_QUOTIENT_HPP
#define FOXFREE_QUOTIENT_HPP

#include <vector>

#include "foxfree/intlinalg.hpp"
#include "foxfree/words.hpp"

namespace foxfree {

// Reduced image tuple in the target group; torsion coordinates are stored in
// [0, modulus).
using CosetKey = std::vector<Int>;

// A computable quotient map q: F -> Z^a x prod Z/m_c with decidable image
// equality.  Coordinate c is free when moduli[c] == 0, cyclic of order
// moduli[c] >= 2 otherwise.  N = ker q is the subgroup all coset machinery
// works relative to.
class QuotientHom {
 public:
  enum class Kind { FreeAbelian, FiniteCyclicProduct, Mixed };

  QuotientHom() = default;
  // images[f] is the image tuple of the canonical generator of factor f.
  QuotientHom(const FactorTable& table, std::vector<Int> moduli,
              std::vector<std::vector<Int>> images);

  // Full abelianization: one coordinate per factor, identity images, torsion
  // factors contributing their order as the modulus.
  static QuotientHom abelianization(const FactorTable& table);

  Kind kind() const;
  size_t target_dim() const { return moduli_.size(); }
  const std::vector<Int>& moduli() const { return moduli_; }
  const std::vector<std::vector<Int>>& images() const { return images_; }

  CosetKey reduce(CosetKey key) const;
  CosetKey image(const Word& w) const;
  CosetKey image_of_letter(int factor, int64_t exp) const;
  CosetKey identity_key() const { return CosetKey(target_dim(), 0); }
  bool in_kernel(const Word& w) const;

  // Lattice membership: is `key` reachable by an integer combination of the
  // generator images of the factors in P?  Exact, via integer elimination.
  bool in_subgroup_image(const CosetKey& key, const std::vector<int>& P) const;

 private:
  std::vector<Int> moduli_;
  std::vector<std::vector<Int>> images_;
};

}  // namespace foxfree

#endif
