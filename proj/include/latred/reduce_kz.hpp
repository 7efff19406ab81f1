#ifndef LATRED_REDUCE_KZ_HPP
#define LATRED_REDUCE_KZ_HPP

#include "latred/lattice.hpp"

namespace latred {

/// Unimodular expansion of a primitive integer vector: u's first column is c1.
struct BasisExpansion {
  UnimodularMatrix u;
  IntVector first_column;
};

/// Extends a primitive vector (gcd of entries 1) to a unimodular matrix by
/// iterated extended-gcd column elimination. det(u) is normalized to +1.
BasisExpansion expand_to_unimodular(const IntVector& c1);

struct KzConfig {
  std::size_t rank_cap = 12;  // exponential subroutine; desk-scale guard
  std::size_t passes = 1;
  double lll_delta = 0.99;  // preconditioning before each SVP enumeration
};

/// Classic KZ: r_ii = lambda_1 of the projected block for every i, columns
/// size-reduced against their predecessors.
ReductionOutcome kz_reduce(const LatticeBasis& basis, const KzConfig& cfg = {});

/// Boosted KZ: same projections, but size reduction is replaced by an exact
/// CVP step against the leading block, so column norms never increase.
ReductionOutcome boosted_kz_reduce(const LatticeBasis& basis, const KzConfig& cfg = {});

/// Chases the subdiagonal fill left behind by a basis expansion back to upper
/// triangular form with Givens rotations, keeping q*r fixed and the diagonal
/// positive. Rotations are mirrored onto q (q <- q G^T).
void restore_upper_triangular(Matrix& r, Matrix& q, std::size_t from_col,
                              FlopCounter* fc = nullptr);

}  // namespace latred

#endif
