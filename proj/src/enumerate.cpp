#include "latred/enumerate.hpp"

#include <algorithm>
#include <cmath>

namespace latred {

std::int64_t zigzag_candidate(double center, std::uint64_t q) {
  const std::int64_t base = std::llround(center);
  if (q == 0) return base;
  const std::int64_t step = static_cast<std::int64_t>((q + 1) / 2);
  const bool lean_up = center >= static_cast<double>(base);
  const bool odd = (q % 2) == 1;
  if (odd == lean_up) return base + step;
  return base - step;
}

namespace {

constexpr std::size_t kOracleRankCap = 6;

void check_block(const Matrix& r) {
  if (r.rows() != r.cols()) throw DimensionMismatch("enumeration block must be square");
  for (std::size_t i = 0; i < r.rows(); ++i)
    if (!(r(i, i) > 0.0)) throw NonPositiveDiagonal("enumeration block needs a positive diagonal");
}

struct Best {
  bool found = false;
  IntVector coeffs;
  double norm_sq = 0.0;
};

IntVector canonical_svp(const IntVector& x) {
  for (std::int64_t v : x) {
    if (v > 0) return x;
    if (v < 0) {
      IntVector y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = -x[i];
      return y;
    }
  }
  return x;
}

bool tie_prefers(const IntVector& challenger, const IntVector& incumbent, bool svp) {
  const IntVector a = svp ? canonical_svp(challenger) : challenger;
  const IntVector b = svp ? canonical_svp(incumbent) : incumbent;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

/// One exhaustive SE pass inside radius s. Updates best in place.
void se_pass(const Matrix& r, const Vector& target, bool svp, double s, Best& best,
             std::uint64_t& nodes, FlopCounter* fc, const EnumObserver* observer) {
  const std::size_t m = r.rows();
  const double tie_rel = tols().enum_relative;
  double bound_sq = s * s * (1.0 + tie_rel) + tie_rel;
  auto tie_eps = [&](double v) { return tie_rel * std::max(1.0, v); };

  std::vector<std::int64_t> x(m, 0);
  std::vector<double> center(m, 0.0);
  std::vector<double> dist_above(m, 0.0);  // cost of layers above k, given x there
  std::vector<double> contrib(m, 0.0);
  std::vector<std::uint64_t> q(m, 0);

  auto compute_center = [&](std::size_t k) {
    double t = target[k];
    for (std::size_t j = k + 1; j < m; ++j) t -= r(k, j) * static_cast<double>(x[j]);
    center[k] = t / r(k, k);
  };

  std::size_t k = m - 1;
  dist_above[m - 1] = 0.0;
  compute_center(m - 1);
  q[m - 1] = 0;

  while (true) {
    const std::int64_t cand = zigzag_candidate(center[k], q[k]);
    ++q[k];
    ++nodes;
    if (fc) {
      fc->add_nodes(1);
      // layer numbering matches the node-cost model: 1 at the bottom
      fc->add_flops(2 * (k + 1) + 7);
    }
    if (observer) (*observer)(k + 1, cand);
    const double off = center[k] - static_cast<double>(cand);
    const double c = off * off * r(k, k) * r(k, k);
    if (dist_above[k] + c > bound_sq) {
      // zig-zag children come in nondecreasing cost order: this layer is done
      if (k + 1 == m) return;
      ++k;
      continue;
    }
    x[k] = cand;
    contrib[k] = c;
    if (k == 0) {
      const double norm_sq = dist_above[0] + c;
      const bool zero = std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
      if (!(svp && zero)) {
        if (!best.found || norm_sq < best.norm_sq - tie_eps(best.norm_sq)) {
          best = {true, x, norm_sq};
          bound_sq = std::min(bound_sq, best.norm_sq + tie_eps(best.norm_sq));
        } else if (norm_sq <= best.norm_sq + tie_eps(best.norm_sq) &&
                   tie_prefers(x, best.coeffs, svp)) {
          best.coeffs = x;
          best.norm_sq = std::min(best.norm_sq, norm_sq);
        }
      }
      continue;  // keep walking layer 0 until the bound cuts it off
    }
    --k;
    dist_above[k] = dist_above[k + 1] + contrib[k + 1];
    compute_center(k);
    q[k] = 0;
  }
}

EnumerationResult run(const EnumerationProblem& p, bool svp, FlopCounter* fc,
                      const EnumObserver* observer) {
  check_block(p.r);
  const std::size_t m = p.r.rows();
  Vector target(m, 0.0);
  if (!svp) {
    if (!p.target || p.target->size() != m)
      throw DimensionMismatch("CVP target length must match the block rank");
    target = *p.target;
  }

  std::vector<double> radii;
  switch (p.radius.mode) {
    case RadiusSchedule::Mode::Fixed:
      radii.push_back(p.radius.fixed_radius);
      break;
    case RadiusSchedule::Mode::FirstColumn:
      radii.push_back(p.r(0, 0));
      break;
    case RadiusSchedule::Mode::PackingStart: {
      double acc = 0.0;
      for (std::size_t kk = 0; kk < m; ++kk) {
        acc += p.r(kk, kk) * p.r(kk, kk);
        radii.push_back(0.5 * std::sqrt(acc));
      }
      if (svp) radii.push_back(p.r(0, 0));  // packing schedule may not reach lambda_1
      break;
    }
  }

  Best best;
  std::uint64_t nodes = 0;
  for (double s : radii) {
    se_pass(p.r, target, svp, s, best, nodes, fc, observer);
    if (best.found) break;
  }
  if (!best.found) {
    if (p.radius.mode == RadiusSchedule::Mode::Fixed) throw RadiusExhausted(p.radius.fixed_radius);
    throw Error("enumeration schedule exhausted without a point");  // unreachable by construction
  }
  if (svp) best.coeffs = canonical_svp(best.coeffs);
  return {std::move(best.coeffs), best.norm_sq, nodes};
}

}  // namespace

EnumerationResult solve_svp(const EnumerationProblem& p, FlopCounter* fc,
                            const EnumObserver* observer) {
  if (p.target) throw Error("solve_svp called with a CVP target");
  return run(p, /*svp=*/true, fc, observer);
}

EnumerationResult solve_cvp(const EnumerationProblem& p, FlopCounter* fc,
                            const EnumObserver* observer) {
  if (!p.target) throw Error("solve_cvp requires a target");
  return run(p, /*svp=*/false, fc, observer);
}

EnumerationResult brute_force_cvp(const Matrix& r, const Vector& target, std::int64_t box) {
  check_block(r);
  const std::size_t m = r.rows();
  if (m > kOracleRankCap) throw RankTooLarge("brute_force_cvp caps rank at 6");
  if (target.size() != m) throw DimensionMismatch("target length must match the block rank");
  if (box < 0) throw Error("box must be nonnegative");

  IntVector x(m, -box);
  IntVector best_x(m, 0);
  double best_d = -1.0;
  std::uint64_t nodes = 0;
  const double tie = tols().enum_relative;
  bool carry = false;
  while (!carry) {
    Vector pt(m, 0.0);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i <= j; ++i) pt[i] += r(i, j) * static_cast<double>(x[j]);
    double d = 0.0;
    for (std::size_t i = 0; i < m; ++i) d += (target[i] - pt[i]) * (target[i] - pt[i]);
    ++nodes;
    if (best_d < 0.0 || d < best_d - tie * std::max(1.0, best_d)) {
      best_d = d;
      best_x = x;
    } else if (d <= best_d + tie * std::max(1.0, best_d) && tie_prefers(x, best_x, false)) {
      best_x = x;
      best_d = std::min(best_d, d);
    }
    // odometer increment
    std::size_t i = 0;
    for (;; ++i) {
      if (i == m) {
        carry = true;
        break;
      }
      if (x[i] < box) {
        ++x[i];
        break;
      }
      x[i] = -box;
    }
  }
  return {std::move(best_x), best_d, nodes};
}

Vector successive_minima(const LatticeBasis& basis, std::int64_t box) {
  const std::size_t n = basis.rank();
  if (n > kOracleRankCap) throw RankTooLarge("successive_minima caps rank at 6");
  if (box < 1) throw BoxTooSmall("box must be >= 1");

  struct Candidate {
    double norm_sq;
    IntVector coeffs;
  };
  std::vector<Candidate> cands;
  IntVector x(n, -box);
  bool carry = false;
  while (!carry) {
    if (std::any_of(x.begin(), x.end(), [](std::int64_t v) { return v != 0; })) {
      Vector pt = basis.matrix() * Vector(x.begin(), x.end());
      cands.push_back({norm_sq(pt), canonical_svp(x)});
    }
    std::size_t i = 0;
    for (;; ++i) {
      if (i == n) {
        carry = true;
        break;
      }
      if (x[i] < box) {
        ++x[i];
        break;
      }
      x[i] = -box;
    }
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
    if (a.norm_sq != b.norm_sq) return a.norm_sq < b.norm_sq;
    return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(),
                                        b.coeffs.end());
  });

  Vector lambdas;
  std::vector<IntVector> chosen;
  for (const Candidate& c : cands) {
    std::vector<IntVector> trial = chosen;
    trial.push_back(c.coeffs);
    if (integer_rank(trial) > chosen.size()) {
      chosen.push_back(c.coeffs);
      lambdas.push_back(std::sqrt(c.norm_sq));
      if (chosen.size() == n) break;
    }
  }
  if (chosen.size() < n) throw BoxTooSmall("fewer than n independent vectors in the box");
  return lambdas;
}

}  // namespace latred
