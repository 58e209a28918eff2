#ifndef FOXFREE_FREIHEIT_HPP
#define FOXFREE_FREIHEIT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "foxfree/magnus.hpp"
#include "foxfree/ringmat.hpp"
#include "foxfree/schreier.hpp"

namespace foxfree {

// A presentation of F/R together with the stage-0 quotient.  When no
// quotient is declared, the canonical one is derived: the abelianization of
// F/<<relators>>, brought to coordinate form Z^a x prod Z/d by Smith normal
// form (its kernel N contains every relator by construction).
struct Presentation {
  FactorTable table;
  std::vector<Word> relators;
  QuotientHom quotient;
  bool quotient_declared = false;

  int generators() const { return table.size(); }
  int relator_count() const { return static_cast<int>(relators.size()); }
};

Presentation make_presentation(FactorTable table, std::vector<Word> relators,
                               std::optional<QuotientHom> declared = std::nullopt);

// Presentation file format (JSON, versioned).  Round-trips exactly.
Presentation load_presentation(const std::string& json_text);
std::string save_presentation(const Presentation& p);

// The Fox Jacobian projected to Z[F/N]: entry (i, j) is the image of
// D_j(r_i), as a Laurent polynomial in the quotient coordinates.  The ring
// carries phi' = full augmentation.
struct Jacobian {
  LaurentRing ring;
  RingMatrix<LaurentRing> matrix;  // relator_count rows (possibly 0) x n cols
};

Jacobian jacobian_abelianized(const Presentation& p);

struct SelectionReport {
  std::vector<int> J;        // factor ids whose factors generate the free subgroup
  std::vector<int> pivots;   // I_s: original column ids of the pivot columns
  int rank = 0;
  TransformLog<LaurentRing> log;
  Jacobian jacobian;                   // input matrix
  RingMatrix<LaurentRing> triangular;  // after replaying the log
  bool torsion = false;  // quotient has torsion: outside the paper's orderable scope
};

// Stage-0 selection of Theorem 2: triangularize the abelianized Jacobian,
// take I_s = pivot columns mapped back through the column swaps, J = the
// complement.  Requires m < n; guarantees |J| >= n - m.
SelectionReport select_free_subset(const Presentation& p);

enum class CriterionVerdict { Pass, Fail, Inconclusive };

struct CriterionReport {
  bool syllable_test = false;  // cyclically reduced r has a syllable outside P
  bool fox_test = false;       // some abelianized D_k(r), k outside P, is nonzero
  std::optional<int> lcs_stratum;  // Magnus degree of r in N's free basis, when computed
  CriterionVerdict verdict = CriterionVerdict::Inconclusive;
};

// One-relator freeness criteria: the classical syllable condition plus the
// abelianized Fox surrogate.  Never claims the paper's exact conjugacy
// condition: pass requires both tests, fail means the reduced relator lies
// in the candidate subgroup, anything else is inconclusive.
CriterionReport one_relator_criterion(const Word& r, const std::vector<int>& P,
                                      const Presentation& p);

struct FalsifyBounds {
  int max_conjugators = 2;
  int max_conj_len = 2;
  int64_t max_word_len = 6;
  int lie_cap = 3;
  uint64_t step_budget = 5'000'000;
};

struct Counterexample {
  enum class Kind { Enumeration, LieDegree };
  Kind kind = Kind::Enumeration;

  // Enumeration certificate: witness = prod f_i^-1 r_{k_i}^{s_i} f_i, a
  // nontrivial element of H; replay() reassembles it.
  Word witness;
  struct ConjugateFactor {
    int relator = 0;
    int sign = 1;
    Word conjugator;
  };
  std::vector<ConjugateFactor> certificate;

  // Lie certificate: degree at which the relator-leading-term ideal meets
  // the J-subalgebra with positive dimension.
  int lie_degree = 0;
  int lie_dimension = 0;

  Word replay(const Presentation& p) const;
};

struct FalsifyResult {
  enum class Status { None, Found, BudgetExceeded };
  Status status = Status::None;
  std::optional<Counterexample> counterexample;
  uint64_t steps = 0;
};

// Bounded negation search for H \cap R N_kl = H \cap N_kl.  Stage 1
// enumerates products of relator conjugates and flags any nontrivial result
// inside H = gr(A_j : j in J): such a word lies in H \cap R N_1l for every l
// while leaving H \cap N_1l at l above its LCS degree, a genuine violation.
// Stage 2 (torsion-free tables) intersects the Lie ideal of the relators'
// leading terms with the J-subalgebra.  "None" is bounded evidence, not a
// proof.
FalsifyResult falsify_freeness(const Presentation& p, const std::vector<int>& J,
                               const FalsifyBounds& bounds);

std::string format_selection(const SelectionReport& r, const Presentation& p);

}  // namespace foxfree

#endif
