#ifndef FOXFREE_FOX_HPP
#define FOXFREE_FOX_HPP

#include <map>
#include <optional>
#include <vector>

#include "foxfree/ring.hpp"

namespace foxfree {

// Fox derivatives D_k of Z[F] for the free-product basis: the unique
// derivations with
//   D_j(g) = 1               on a free letter g = g_j,
//   D_i(a) = a - 1           on a cyclic-factor element a in A_i,
//   D_k    = 0               on other generators,
// extended by d(uv) = d(u) v + eps(u) d(v).  A cyclic-factor syllable a^e is
// a single factor element, so the factor rule applies to it atomically.
RingElement derivative(const FactorTable& t, int k, const Word& w);
RingElement derivative(const FactorTable& t, int k, const RingElement& u);

// All nonzero D_k(u), keyed by generator id.
using DerivativeVector = std::map<int, RingElement>;
DerivativeVector derivative_vector(const FactorTable& t, const RingElement& u);

// u - eps(u) - sum_i D_i(u) - sum_j (g_j - 1) D_j(u); zero for every u.
RingElement fundamental_defect(const FactorTable& t, const RingElement& u);

// Expression of a word as a product of basis words and their inverses.
struct BasisExpression {
  std::vector<std::pair<int, int>> letters;  // (basis index, +-1)
};

// Bounded rewriting of v as a product of the given basis words (depth-first
// with a budget; the basis is expected to be Nielsen-reduced, e.g. a Schreier
// basis.)  Throws BoundExhausted when no expression is found in the budget.
BasisExpression rewrite_in_basis(const FactorTable& t, const Word& v,
                                 const std::vector<Word>& basis, int max_depth = 16);

// Chain rule relative to a free subgroup basis:
//   D_k(v) = sum_z D_k(x_z) * d_z(v),
// with d_z Fox derivatives over a fresh free alphabet, one letter per basis
// word.  Equals derivative(t, k, v) exactly.  When `expr` is supplied it is
// used instead of the internal rewriting (callers with a Schreier table can
// rewrite exactly); it must evaluate to v.
RingElement chain_rule_decompose(const FactorTable& t, const Word& v,
                                 const std::vector<Word>& basis, int k,
                                 const std::optional<BasisExpression>& expr = std::nullopt,
                                 int max_depth = 16);

// Checks D_k(f^-1 n f) == D_k(n) f  mod Z[F].(N - 1); n must lie in ker q.
bool conjugation_congruence_check(const FactorTable& t, const Word& n, const Word& f,
                                  const QuotientHom& q, int k);

}  // namespace foxfree

#endif
