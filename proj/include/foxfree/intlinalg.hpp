#ifndef FOXFREE_INTLINALG_HPP
#define FOXFREE_INTLINALG_HPP

#include <vector>

#include "foxfree/ints.hpp"

namespace foxfree {

using IntMat = std::vector<std::vector<Int>>;

IntMat identity_mat(size_t n);
IntMat mat_mul(const IntMat& a, const IntMat& b);
std::vector<Int> mat_vec(const IntMat& a, const std::vector<Int>& x);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
// all d_i > 0.  Exact integer elimination throughout.
struct SmithResult {
  IntMat u, v, d;
  int rank = 0;
  Int diag(int i) const { return d[static_cast<size_t>(i)][static_cast<size_t>(i)]; }
};

SmithResult smith_normal_form(IntMat a);

// Solves A x = b over the integers.  Returns false when no solution exists.
bool solve_integer(const IntMat& a, const std::vector<Int>& b, std::vector<Int>* x = nullptr);

}  // namespace foxfree

#endif
