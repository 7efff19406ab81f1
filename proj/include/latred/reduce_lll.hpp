#ifndef LATRED_REDUCE_LLL_HPP
#define LATRED_REDUCE_LLL_HPP

#include <vector>

#include "latred/lattice.hpp"

namespace latred {

struct LovaszParams {
  double delta;
  double beta;  // 1 / sqrt(delta - 1/4)
  explicit LovaszParams(double d);
};

/// Route allocation for the parallel nearest plane search. counts_from_top[0]
/// is the branch count at the top layer (i-1), counts_from_top[1] at layer
/// i-2, and so on; missing layers default to a single branch.
struct PnpConfig {
  std::vector<std::uint64_t> counts_from_top;

  static PnpConfig single_route() { return {}; }
  /// L = 1, 3, 9: expand 3 branches in the first zero, one or two layers.
  static PnpConfig from_total_routes(std::uint64_t total);

  std::uint64_t branches_at(std::size_t depth_from_top, std::size_t layers) const;
  std::uint64_t total_routes(std::size_t layers) const;
};

struct RouteCandidate {
  Vector residual;   // length i; equals R_{1:i,1:i} * coeffs
  IntVector coeffs;  // length i, last entry 1
  bool first_layer_rounds_to_zero;
};

/// Sequential nearest-plane reduction of column i (1-based, 2 <= i <= n)
/// against columns 1..i-1 of upper-triangular r. Equals the single-route PNP.
RouteCandidate babai_nearest_plane(const Matrix& r, std::size_t i, FlopCounter* fc = nullptr);

/// The L PNP routes plus the rejection route (old column), rejection first,
/// then routes in ascending label order.
std::vector<RouteCandidate> pnp_candidates(const Matrix& r, std::size_t i, const PnpConfig& cfg,
                                           FlopCounter* fc = nullptr);

/// Minimal-norm candidate; ties go to the earliest entry in the list
/// (rejection first, then lowest route label).
const RouteCandidate& select_shortest(const std::vector<RouteCandidate>& cands);

/// Minimal-norm candidate whose top-layer quotient rounds to zero.
const RouteCandidate& select_shortest_zero_top(const std::vector<RouteCandidate>& cands);

/// Diagonal-reduction condition at column i (1-based).
bool dr_condition_holds(const Matrix& r, std::size_t i, double delta);

/// delta(a*, n) with a* = 1 / (1 - e^{-1}).
double optimal_delta(std::size_t n);

/// Classic LLL (size reduction + Lovasz swaps), delta in (1/4, 1].
ReductionOutcome lll_reduce(const LatticeBasis& basis, double delta = 0.75);

/// Boosted LLL: PNP length reduction with rejection, DR-condition swaps.
ReductionOutcome boosted_lll_reduce(const LatticeBasis& basis, double delta,
                                    const PnpConfig& cfg);

/// Boosted LLL with the rank-dependent default delta.
ReductionOutcome boosted_lll_reduce(const LatticeBasis& basis, const PnpConfig& cfg);

}  // namespace latred

#endif
