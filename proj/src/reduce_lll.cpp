#include "latred/reduce_lll.hpp"

#include <cmath>

#include "latred/enumerate.hpp"

namespace latred {

namespace {

std::uint64_t loop_cap(const Matrix& r_initial) {
  const std::size_t n = r_initial.rows();
  double dmax = 0.0, dmin = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = r_initial(i, i);
    dmax = i == 0 ? d : std::max(dmax, d);
    dmin = i == 0 ? d : std::min(dmin, d);
  }
  const double kappa = dmax / dmin;
  const double ceil_log = std::ceil(std::log(1.0 + kappa));
  return static_cast<std::uint64_t>(10.0 * static_cast<double>(n * n) * std::max(1.0, ceil_log));
}

void flip_row_sign(Matrix& r, Matrix& q, std::size_t row) {
  for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) = -r(row, j);
  for (std::size_t i = 0; i < q.rows(); ++i) q(i, row) = -q(i, row);
}

// Swap columns i-1 and i (1-based), restore the triangle with the 2x2 Givens
// block, and keep the diagonal positive. The rotation is defined from the
// pre-swap entries r_{i-1,i} and r_{i,i}.
void swap_and_restore(Matrix& r, Matrix& q, UnimodularMatrix& t, std::size_t i, FlopCounter& fc) {
  const GivensBlock g = givens_for(r(i - 2, i - 1), r(i - 1, i - 1), i - 2);
  r.swap_columns(i - 2, i - 1);
  t.swap_columns(i - 2, i - 1);
  apply_givens_rows(r, g, i - 2);
  apply_givens_cols(q, g);
  r(i - 1, i - 2) = 0.0;
  if (r(i - 1, i - 1) < 0.0) flip_row_sign(r, q, i - 1);
  if (r(i - 2, i - 2) < 0.0) flip_row_sign(r, q, i - 2);
  fc.swaps += 1;
  fc.add_flops(6 * (r.cols() + q.rows()));
}

ReductionOutcome rank_one_outcome(const LatticeBasis& basis) {
  UnimodularMatrix t(1);
  Matrix d = basis.matrix();
  if (d(0, 0) < 0.0) {
    t(0, 0) = -1;
    d(0, 0) = -d(0, 0);
  }
  return {LatticeBasis(d), t, FlopCounter{}};
}

ReductionOutcome finish(Matrix q, Matrix r, UnimodularMatrix t, FlopCounter fc) {
  const std::size_t n = r.rows();
  // Re-orthogonalize only when the carried Q drifted.
  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(k, i) * q(k, j);
      drift = std::max(drift, std::fabs(s - (i == j ? 1.0 : 0.0)));
    }
  Matrix d = q * r;
  fc.add_flops(n * n * n);
  if (drift > tols().q_drift) {
    const QrFactors qr = qr_decompose(d);
    d = qr.q * qr.r;
    fc.add_flops(4 * n * n * n / 3 + n * n * n);
  }
  return {LatticeBasis(std::move(d)), std::move(t), fc};
}

}  // namespace

LovaszParams::LovaszParams(double d) : delta(d), beta(1.0 / std::sqrt(d - 0.25)) {
  if (!(d > 0.25) || !(d <= 1.0)) throw Error("Lovasz constant must lie in (1/4, 1]");
}

PnpConfig PnpConfig::from_total_routes(std::uint64_t total) {
  if (total == 0) throw Error("route count must be >= 1");
  PnpConfig cfg;
  // Factor powers of 3 into the top layers; any leftover factor goes last.
  std::uint64_t rest = total;
  while (rest % 3 == 0) {
    cfg.counts_from_top.push_back(3);
    rest /= 3;
  }
  if (rest > 1) cfg.counts_from_top.push_back(rest);
  return cfg;
}

std::uint64_t PnpConfig::branches_at(std::size_t depth_from_top, std::size_t layers) const {
  if (depth_from_top >= layers) throw DimensionMismatch("PNP layer out of range");
  if (depth_from_top >= counts_from_top.size()) return 1;
  const std::uint64_t p = counts_from_top[depth_from_top];
  if (p < 1) throw Error("PNP branch counts must be >= 1");
  return p;
}

std::uint64_t PnpConfig::total_routes(std::size_t layers) const {
  std::uint64_t total = 1;
  for (std::size_t d = 0; d < layers; ++d) total *= branches_at(d, layers);
  return total;
}

static std::int64_t top_layer_quotient(const Matrix& r, std::size_t i, const Vector& residual) {
  return std::llround(residual[i - 2] / r(i - 2, i - 2));
}

RouteCandidate babai_nearest_plane(const Matrix& r, std::size_t i, FlopCounter* fc) {
  std::vector<RouteCandidate> cands =
      pnp_candidates(r, i, PnpConfig::single_route(), fc);
  return cands[1];  // the single PNP route; index 0 is the rejection
}

std::vector<RouteCandidate> pnp_candidates(const Matrix& r, std::size_t i, const PnpConfig& cfg,
                                           FlopCounter* fc) {
  if (r.rows() != r.cols()) throw DimensionMismatch("pnp_candidates expects a square matrix");
  if (i < 2 || i > r.rows()) throw DimensionMismatch("column index out of range");
  const std::size_t layers = i - 1;

  std::vector<RouteCandidate> out;
  out.reserve(cfg.total_routes(layers) + 1);

  Vector old_col(i);
  for (std::size_t k = 0; k < i; ++k) old_col[k] = r(k, i - 1);
  IntVector unit(i, 0);
  unit[i - 1] = 1;
  out.push_back({old_col, unit, top_layer_quotient(r, i, old_col) == 0});

  // Depth-first route expansion; label order (q_{i-1},...,q_1) ascending.
  struct Frame {
    Vector residual;
    IntVector coeffs;
  };
  std::vector<std::uint64_t> label(layers, 0);
  std::function<void(std::size_t, Frame)> descend = [&](std::size_t depth, Frame f) {
    if (depth == layers) {
      out.push_back({f.residual, f.coeffs, top_layer_quotient(r, i, f.residual) == 0});
      return;
    }
    const std::size_t k = i - 1 - depth;  // 1-based layer index, i-1 down to 1
    const double pivot = f.residual[k - 1] / r(k - 1, k - 1);
    const std::uint64_t p = cfg.branches_at(depth, layers);
    for (std::uint64_t q = 0; q < p; ++q) {
      Frame g = f;
      const std::int64_t c = zigzag_candidate(pivot, q);
      if (c != 0)
        for (std::size_t row = 0; row < k; ++row)
          g.residual[row] -= static_cast<double>(c) * r(row, k - 1);
      g.coeffs[k - 1] = -c;
      if (fc) fc->add_flops(k + 1);
      descend(depth + 1, std::move(g));
    }
  };
  descend(0, {old_col, unit});
  return out;
}

const RouteCandidate& select_shortest(const std::vector<RouteCandidate>& cands) {
  if (cands.empty()) throw Error("select_shortest needs at least one candidate");
  const RouteCandidate* best = &cands[0];
  double best_n = norm_sq(best->residual);
  for (const RouteCandidate& c : cands) {
    const double n = norm_sq(c.residual);
    if (n < best_n * (1.0 - 1e-15)) {  // ties keep the earliest entry
      best = &c;
      best_n = n;
    }
  }
  return *best;
}

const RouteCandidate& select_shortest_zero_top(const std::vector<RouteCandidate>& cands) {
  if (cands.empty()) throw Error("select_shortest_zero_top needs at least one candidate");
  const RouteCandidate* best = nullptr;
  double best_n = 0.0;
  for (const RouteCandidate& c : cands) {
    if (!c.first_layer_rounds_to_zero) continue;
    const double n = norm_sq(c.residual);
    if (best == nullptr || n < best_n * (1.0 - 1e-15)) {
      best = &c;
      best_n = n;
    }
  }
  if (best == nullptr) throw NoFeasibleRoute();
  return *best;
}

bool dr_condition_holds(const Matrix& r, std::size_t i, double delta) {
  if (i < 2 || i > r.rows()) throw DimensionMismatch("column index out of range");
  const double prev = r(i - 2, i - 2);
  const double off = r(i - 2, i - 1);
  const double diag = r(i - 1, i - 1);
  const double rem = off - static_cast<double>(std::llround(off / prev)) * prev;
  return delta * prev * prev <= diag * diag + rem * rem;
}

double optimal_delta(std::size_t n) {
  if (n < 2) throw DimensionMismatch("optimal_delta expects n >= 2");
  const double a_star = 1.0 / (1.0 - std::exp(-1.0));
  const double nd = static_cast<double>(n);
  return 1.0 / a_star + std::pow((a_star - 1.0) / a_star, nd / (nd - 1.0));
}

ReductionOutcome lll_reduce(const LatticeBasis& basis, double delta) {
  const LovaszParams params(delta);
  const std::size_t n = basis.rank();
  if (n == 1) return rank_one_outcome(basis);

  QrFactors qr = qr_decompose(basis.matrix());
  Matrix& q = qr.q;
  Matrix& r = qr.r;
  UnimodularMatrix t(n);
  FlopCounter fc;
  fc.add_flops(4 * n * n * n / 3);
  const std::uint64_t cap = loop_cap(r);

  std::size_t i = 2;
  while (i <= n) {
    if (++fc.loops > cap) throw MaxLoopsExceeded();
    // size reduction of column i against i-1, ..., 1
    for (std::size_t j = i - 1; j >= 1; --j) {
      const std::int64_t c = std::llround(r(j - 1, i - 1) / r(j - 1, j - 1));
      if (c != 0) {
        for (std::size_t row = 0; row < j; ++row)
          r(row, i - 1) -= static_cast<double>(c) * r(row, j - 1);
        t.add_multiple_of_column(i - 1, j - 1, -c);
      }
      fc.add_flops(j + 1);
    }
    const double lhs = delta * r(i - 2, i - 2) * r(i - 2, i - 2);
    const double rhs = r(i - 1, i - 1) * r(i - 1, i - 1) + r(i - 2, i - 1) * r(i - 2, i - 1);
    fc.add_flops(4);
    if (lhs > rhs) {
      swap_and_restore(r, q, t, i, fc);
      i = i > 2 ? i - 1 : 2;
    } else {
      ++i;
    }
  }
  return finish(std::move(q), std::move(r), std::move(t), fc);
}

ReductionOutcome boosted_lll_reduce(const LatticeBasis& basis, double delta,
                                    const PnpConfig& cfg) {
  if (!(delta > 0.5) || !(delta < 1.0)) throw Error("boosted LLL needs delta in (1/2, 1)");
  const std::size_t n = basis.rank();
  if (n == 1) return rank_one_outcome(basis);

  QrFactors qr = qr_decompose(basis.matrix());
  Matrix& q = qr.q;
  Matrix& r = qr.r;
  UnimodularMatrix t(n);
  FlopCounter fc;
  fc.add_flops(4 * n * n * n / 3);
  const std::uint64_t cap = loop_cap(r);

  std::size_t i = 2;
  while (i <= n) {
    if (++fc.loops > cap) throw MaxLoopsExceeded();
    const std::vector<RouteCandidate> cands = pnp_candidates(r, i, cfg, &fc);
    // Both selections act on the pre-update state of T's columns.
    const RouteCandidate& best = select_shortest(cands);
    const IntVector t_best = [&] {
      IntVector acc(n, 0);
      for (std::size_t j = 0; j < i; ++j)
        if (best.coeffs[j] != 0)
          for (std::size_t row = 0; row < n; ++row)
            acc[row] = checked_add(acc[row], checked_mul(best.coeffs[j], t(row, j)));
      return acc;
    }();
    const RouteCandidate zero_top = select_shortest_zero_top(cands);
    const IntVector t_zero = [&] {
      IntVector acc(n, 0);
      for (std::size_t j = 0; j < i; ++j)
        if (zero_top.coeffs[j] != 0)
          for (std::size_t row = 0; row < n; ++row)
            acc[row] = checked_add(acc[row], checked_mul(zero_top.coeffs[j], t(row, j)));
      return acc;
    }();

    for (std::size_t row = 0; row < i; ++row) r(row, i - 1) = best.residual[row];
    t.set_column(i - 1, t_best);
    fc.add_flops(4);
    if (!dr_condition_holds(r, i, delta)) {
      for (std::size_t row = 0; row < i; ++row) r(row, i - 1) = zero_top.residual[row];
      t.set_column(i - 1, t_zero);
      swap_and_restore(r, q, t, i, fc);
      i = i > 2 ? i - 1 : 2;
    } else {
      ++i;
    }
  }
  return finish(std::move(q), std::move(r), std::move(t), fc);
}

ReductionOutcome boosted_lll_reduce(const LatticeBasis& basis, const PnpConfig& cfg) {
  return boosted_lll_reduce(basis, optimal_delta(std::max<std::size_t>(basis.rank(), 2)), cfg);
}

}  // namespace latred
