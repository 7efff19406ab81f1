#ifndef LATRED_INTEGER_FORCING_HPP
#define LATRED_INTEGER_FORCING_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "latred/lattice.hpp"

namespace latred {

/// Real-valued channel H at linear SNR p.
struct IfInstance {
  Matrix h;
  double p;

  IfInstance(Matrix channel, double snr_linear);
};

/// Integer-forcing receiver report for one (H, P) realization.
struct RateReport {
  UnimodularMatrix a;        // rows a_i^T
  Matrix b;                  // rows b_i^T, the optimal projections
  Vector per_stream_rates;   // bits per real channel use, clamped at 0
  double min_rate;
  double sum_metric_od;      // ln xi of the reduced effective basis
  FlopCounter counter;
};

struct ReducerSpec {
  enum class Kind { Lll, BoostedLll, Kz, BoostedKz };
  Kind kind = Kind::Lll;
  std::uint64_t routes = 1;     // boosted-LLL route count L
  std::size_t kz_rank_cap = 12;

  /// Accepts lll, blll-<L>, kz, bkz (long aliases boosted-lll-<L>, boosted-kz).
  static ReducerSpec parse(const std::string& name);
  std::string name() const;

  ReductionOutcome reduce(const LatticeBasis& basis) const;
};

/// D with D^T D = (H^T H + I/P)^{-1}: D = Lambda^{-1/2} V^T from the
/// eigendecomposition V Lambda V^T = H^T H + I/P. Always full rank.
LatticeBasis effective_basis(const IfInstance& inst);

/// Coefficient matrix A: rows are the columns of the unimodular transform
/// that reduces the effective basis.
UnimodularMatrix if_coefficients(const LatticeBasis& d, const ReducerSpec& reducer,
                                 FlopCounter* fc = nullptr);

/// Optimal projections, one row per row of a: b_i = (H H^T + I/P)^{-1} H a_i.
Matrix optimal_projection(const IfInstance& inst, const UnimodularMatrix& a);

/// R(H, a_i) = (1/2) log2+ (P / ||D a_i||^2).
double computation_rate(const IfInstance& inst, const IntVector& a_i);

/// (1/2) log2 det(I + P H H^T).
double channel_capacity(const IfInstance& inst);

/// Full receiver chain for one realization.
RateReport analyze_instance(const IfInstance& inst, const ReducerSpec& reducer);

struct SweepRow {
  double snr_db;
  std::string reducer;
  double ergodic_rate;  // mean of n * min_i R over successful trials
  double capacity;      // mean channel capacity over the same trials
  double mean_ln_od;
  double mean_flops;
  std::uint64_t failed_trials;
};

struct SweepConfig {
  std::size_t n;
  std::vector<double> snr_db_grid;
  std::size_t trials;
  std::uint64_t seed;
  std::vector<ReducerSpec> reducers;
};

/// Monte Carlo over i.i.d. N(0,1) channels; trial t draws from the stream
/// seeded seed ^ t, so results are independent of evaluation order.
std::vector<SweepRow> ergodic_rate_sweep(const SweepConfig& cfg);

/// CSV: snr_db,reducer,ergodic_rate,capacity,mean_ln_od,mean_flops,failed_trials
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Channel draw for trial `t` of a sweep (row-major entry order).
Matrix sample_channel(std::size_t n, std::uint64_t seed, std::uint64_t trial);

}  // namespace latred

#endif
