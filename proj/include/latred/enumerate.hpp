#ifndef LATRED_ENUMERATE_HPP
#define LATRED_ENUMERATE_HPP

#include <functional>
#include <optional>

#include "latred/instrument.hpp"
#include "latred/lattice.hpp"
#include "latred/matrix.hpp"
#include "latred/unimodular.hpp"

namespace latred {

struct RadiusSchedule {
  enum class Mode { PackingStart, FirstColumn, Fixed };
  Mode mode = Mode::PackingStart;
  double fixed_radius = 0.0;

  static RadiusSchedule packing_start() { return {Mode::PackingStart, 0.0}; }
  static RadiusSchedule first_column() { return {Mode::FirstColumn, 0.0}; }
  static RadiusSchedule fixed(double r) {
    if (!(r > 0.0)) throw Error("fixed enumeration radius must be positive");
    return {Mode::Fixed, r};
  }
};

/// Upper-triangular block with positive diagonal; absent target means SVP.
struct EnumerationProblem {
  Matrix r;
  std::optional<Vector> target;
  RadiusSchedule radius;
};

struct EnumerationResult {
  IntVector coeffs;
  double point_norm_sq = 0.0;
  std::uint64_t nodes_visited = 0;
};

/// q-th (0-based) integer in the zig-zag ordering around a real pivot:
/// round(center) first, then alternating outward, nearer side first.
std::int64_t zigzag_candidate(double center, std::uint64_t q);

/// Test hook: called once per visited node with (1-based layer, candidate).
using EnumObserver = std::function<void(std::size_t, std::int64_t)>;

/// Schnorr-Euchner depth-first SVP. Exact optimum; zig-zag child ordering;
/// ties resolved toward the sign-canonical lexicographically smallest coeffs.
EnumerationResult solve_svp(const EnumerationProblem& p, FlopCounter* fc = nullptr,
                            const EnumObserver* observer = nullptr);

/// Schnorr-Euchner CVP; the zero vector is admissible and wins exact ties.
EnumerationResult solve_cvp(const EnumerationProblem& p, FlopCounter* fc = nullptr,
                            const EnumObserver* observer = nullptr);

/// Exhaustive test oracle over x in [-box, box]^k; rank <= 6 enforced.
EnumerationResult brute_force_cvp(const Matrix& r, const Vector& target, std::int64_t box);

/// Brute-force successive minima lambda_1..lambda_n (test oracle, n <= 6).
/// Independence of the realizing vectors is certified in exact integers.
Vector successive_minima(const LatticeBasis& basis, std::int64_t box);

}  // namespace latred

#endif
