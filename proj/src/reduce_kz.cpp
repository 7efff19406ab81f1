#include "latred/reduce_kz.hpp"

#include <cmath>
#include <cstdlib>

#include "latred/enumerate.hpp"
#include "latred/reduce_lll.hpp"

namespace latred {

namespace {

bool is_signed_unit_first(const IntVector& c) {
  if (c.empty() || (c[0] != 1 && c[0] != -1)) return false;
  for (std::size_t k = 1; k < c.size(); ++k)
    if (c[k] != 0) return false;
  return true;
}

void flip_row_sign(Matrix& r, Matrix& q, std::size_t row) {
  for (std::size_t j = 0; j < r.cols(); ++j) r(row, j) = -r(row, j);
  for (std::size_t i = 0; i < q.rows(); ++i) q(i, row) = -q(i, row);
}

struct ProjectedSvp {
  IntVector coeffs;  // w.r.t. the block's own columns
  double norm;
};

/// SVP on the projected block R_{i:n,i:n} (0-based col0 = i-1).
ProjectedSvp projected_svp(const Matrix& r, std::size_t col0, double lll_delta, FlopCounter& fc) {
  const std::size_t n = r.rows();
  const std::size_t m = n - col0;
  const Matrix block = r.block(col0, col0, m, m);
  const ReductionOutcome pre = lll_reduce(LatticeBasis(block), lll_delta);
  fc.merge(pre.counter);
  const QrFactors qr = qr_decompose(pre.basis.matrix());
  fc.add_flops(4 * m * m * m / 3);
  const EnumerationResult sv =
      solve_svp({qr.r, std::nullopt, RadiusSchedule::first_column()}, &fc);
  return {pre.transform.multiply(sv.coeffs), std::sqrt(sv.point_norm_sq)};
}

void apply_expansion(Matrix& r, UnimodularMatrix& t, std::size_t col0, const UnimodularMatrix& u,
                     FlopCounter& fc) {
  const std::size_t n = r.rows();
  const std::size_t m = u.size();
  const Matrix sub = r.block(0, col0, n, m) * unimodular_to_matrix(u);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) r(i, col0 + j) = sub(i, j);
  t.multiply_block_right(col0, u);
  fc.add_flops(n * m * m);
}

/// Column i (1-based) minus its nearest lattice point in the span of columns
/// 1..i-1: exact CVP for the boosted variant, the Babai walk otherwise.
void length_reduce_column(Matrix& r, UnimodularMatrix& t, std::size_t i, bool exact_cvp,
                          FlopCounter& fc) {
  if (i < 2) return;
  if (exact_cvp) {
    const Matrix lead = r.block(0, 0, i - 1, i - 1);
    Vector target(i - 1);
    for (std::size_t k = 0; k + 1 < i; ++k) target[k] = r(k, i - 1);
    const EnumerationResult cv =
        solve_cvp({lead, target, RadiusSchedule::packing_start()}, &fc);
    for (std::size_t j = 0; j + 1 < i; ++j) {
      const std::int64_t c = cv.coeffs[j];
      if (c == 0) continue;
      for (std::size_t row = 0; row <= j; ++row)
        r(row, i - 1) -= static_cast<double>(c) * r(row, j);
      t.add_multiple_of_column(i - 1, j, checked_neg(c));
      fc.add_flops(j + 2);
    }
  } else {
    for (std::size_t j = i - 1; j >= 1; --j) {
      const std::int64_t c = std::llround(r(j - 1, i - 1) / r(j - 1, j - 1));
      if (c != 0) {
        for (std::size_t row = 0; row < j; ++row)
          r(row, i - 1) -= static_cast<double>(c) * r(row, j - 1);
        t.add_multiple_of_column(i - 1, j - 1, checked_neg(c));
      }
      fc.add_flops(j + 1);
    }
  }
}

ReductionOutcome kz_impl(const LatticeBasis& basis, const KzConfig& cfg, bool boosted) {
  const std::size_t n = basis.rank();
  if (cfg.rank_cap > 0 && n > cfg.rank_cap) throw RankTooLarge("KZ rank cap exceeded");
  if (cfg.passes < 1) throw Error("KZ needs at least one pass");

  QrFactors qr = qr_decompose(basis.matrix());
  Matrix& q = qr.q;
  Matrix& r = qr.r;
  UnimodularMatrix t(n);
  FlopCounter fc;
  fc.add_flops(4 * n * n * n / 3);

  for (std::size_t pass = 0; pass < cfg.passes; ++pass) {
    for (std::size_t i = 1; i <= n; ++i) {
      ++fc.loops;
      if (i < n) {
        const ProjectedSvp sv = projected_svp(r, i - 1, cfg.lll_delta, fc);
        // expand only when it strictly shortens r_ii; ties (the current
        // column already attains lambda_1 of the projection) are a no-op
        if (!is_signed_unit_first(sv.coeffs) && sv.norm < r(i - 1, i - 1) * (1.0 - 1e-12)) {
          const BasisExpansion exp = expand_to_unimodular(sv.coeffs);
          apply_expansion(r, t, i - 1, exp.u, fc);

          restore_upper_triangular(r, q, i - 1, &fc);
        }
      }
      length_reduce_column(r, t, i, boosted, fc);
    }
  }

  Matrix d = q * r;
  fc.add_flops(n * n * n);
  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += q(k, i) * q(k, j);
      drift = std::max(drift, std::fabs(s - (i == j ? 1.0 : 0.0)));
    }
  if (drift > tols().q_drift) {
    const QrFactors re = qr_decompose(d);
    d = re.q * re.r;
    fc.add_flops(4 * n * n * n / 3 + n * n * n);
  }
  return {LatticeBasis(std::move(d)), std::move(t), fc};
}

}  // namespace

BasisExpansion expand_to_unimodular(const IntVector& c1) {
  const std::size_t n = c1.size();
  if (n == 0) throw DimensionMismatch("empty vector");
  IntVector v = c1;
  UnimodularMatrix u(n);
  // Euclidean elimination of v down to +-e1; every step on v is mirrored by
  // the inverse column operation on u, preserving c1 = u * v throughout.
  for (std::size_t j = 1; j < n; ++j) {
    while (v[j] != 0) {
      const std::int64_t quot = v[0] / v[j];
      if (quot != 0) {
        v[0] = checked_sub(v[0], checked_mul(quot, v[j]));
        for (std::size_t row = 0; row < n; ++row)
          u(row, j) = checked_add(u(row, j), checked_mul(quot, u(row, 0)));
      }
      std::swap(v[0], v[j]);
      u.swap_columns(0, j);
    }
  }
  if (v[0] == -1) {
    v[0] = 1;
    u.negate_column(0);
  }
  if (v[0] != 1) throw NotPrimitive("gcd of the entries is not 1");
  if (n > 1 && u.determinant() == -1) u.negate_column(n - 1);
  u.verify_unimodular();
  return {std::move(u), c1};
}

void restore_upper_triangular(Matrix& r, Matrix& q, std::size_t from_col, FlopCounter* fc) {
  const std::size_t n = r.rows();
  if (r.cols() != n || q.cols() != n) throw DimensionMismatch("square factors expected");
  for (std::size_t j = from_col; j < n; ++j) {
    for (std::size_t k = n - 1; k > j; --k) {
      if (r(k, j) == 0.0) continue;
      const GivensBlock g = givens_for(r(k - 1, j), r(k, j), k - 1);
      apply_givens_rows(r, g, j);
      apply_givens_cols(q, g);
      r(k, j) = 0.0;
      if (fc) fc->add_flops(6 * (n - j + q.rows()));
    }
    if (r(j, j) < 0.0) flip_row_sign(r, q, j);
  }
}

ReductionOutcome kz_reduce(const LatticeBasis& basis, const KzConfig& cfg) {
  return kz_impl(basis, cfg, /*boosted=*/false);
}

ReductionOutcome boosted_kz_reduce(const LatticeBasis& basis, const KzConfig& cfg) {
  return kz_impl(basis, cfg, /*boosted=*/true);
}

}  // namespace latred
