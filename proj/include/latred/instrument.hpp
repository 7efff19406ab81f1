#ifndef LATRED_INSTRUMENT_HPP
#define LATRED_INSTRUMENT_HPP

#include <cstdint>
#include <vector>

namespace latred {

/// Work counters carried by every reduction. Flop convention (one unit per
/// multiply-add pair, counted at the linalg primitive level):
///   - dot product / axpy of length m:          m
///   - scalar divide or round:                  1
///   - Givens row update:                       6 per column pair
///   - enumeration node visit in layer k:       2k + 7
///   - Householder QR of an n x n matrix:       4n^3/3
struct FlopCounter {
  std::uint64_t flops = 0;
  std::uint64_t nodes = 0;
  std::uint64_t swaps = 0;
  std::uint64_t loops = 0;

  void add_flops(std::uint64_t f) { flops += f; }
  void add_nodes(std::uint64_t k) { nodes += k; }
  void merge(const FlopCounter& other) {
    flops += other.flops;
    nodes += other.nodes;
    swaps += other.swaps;
    loops += other.loops;
  }
};

enum class EnumMode { Svp, Cvp };

/// Volume of the m-dimensional unit ball, pi^(m/2) / Gamma(1 + m/2).
double unit_ball_volume(std::size_t m);

/// Expected node count in layer k (1-based) of an SE enumeration over an
/// upper-triangular block whose diagonal is r_diag, with sphere radius s:
///   N_k(s) ~ V_{m-k+1}(1) * s^(m-k+1) / (|r_k| ... |r_m|),  m = r_diag.size().
double estimate_nodes(const std::vector<double>& r_diag, std::size_t k, double s);

/// Analytic flop estimate for a full enumeration: sum_k N_k(s) * (2k + 7).
/// SVP and CVP share the formula; the block diagonal passed in fixes the size.
double estimate_enum_flops(const std::vector<double>& r_diag, double s, EnumMode mode);

}  // namespace latred

#endif
