#include "latred/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace latred {

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), e_(rows * cols, fill) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be >= 1");
  if (!std::isfinite(fill)) throw Error("matrix entries must be finite");
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be >= 1");
  if (e_.size() != rows * cols) throw DimensionMismatch("entry count does not match dimensions");
  if (!finite()) throw Error("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::diagonal(const Vector& d) {
  Matrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
  if (cols_ != rhs.rows_) throw DimensionMismatch("matrix product dimension mismatch");
  Matrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

Vector Matrix::operator*(const Vector& v) const {
  if (cols_ != v.size()) throw DimensionMismatch("matrix-vector dimension mismatch");
  Vector out(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
  return out;
}

Matrix Matrix::operator+(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix sum dimension mismatch");
  Matrix out = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] += rhs.e_[k];
  return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw DimensionMismatch("matrix difference dimension mismatch");
  Matrix out = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] -= rhs.e_[k];
  return out;
}

Matrix Matrix::scaled(double a) const {
  Matrix out = *this;
  for (double& x : out.e_) x *= a;
  return out;
}

Vector Matrix::column(std::size_t j) const {
  Vector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
  if (v.size() != rows_) throw DimensionMismatch("column length mismatch");
  for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

void Matrix::swap_columns(std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

Matrix Matrix::block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) throw DimensionMismatch("block out of range");
  Matrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

double Matrix::max_abs() const {
  double m = 0.0;
  for (double x : e_) m = std::max(m, std::fabs(x));
  return m;
}

bool Matrix::finite() const {
  return std::all_of(e_.begin(), e_.end(), [](double x) { return std::isfinite(x); });
}

QrFactors qr_decompose(const Matrix& d) {
  if (d.rows() != d.cols()) throw DimensionMismatch("qr_decompose expects a square matrix");
  const std::size_t n = d.rows();
  Matrix r = d;
  Matrix q = Matrix::identity(n);
  // Householder reflections accumulated into Q.
  for (std::size_t k = 0; k + 1 < n; ++k) {
    double sigma = 0.0;
    for (std::size_t i = k; i < n; ++i) sigma += r(i, k) * r(i, k);
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) continue;
    const double alpha = r(k, k) > 0 ? -sigma : sigma;
    Vector v(n, 0.0);
    v[k] = r(k, k) - alpha;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = r(i, k);
    double vtv = 0.0;
    for (std::size_t i = k; i < n; ++i) vtv += v[i] * v[i];
    if (vtv == 0.0) continue;
    const double beta = 2.0 / vtv;
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * r(i, j);
      s *= beta;
      for (std::size_t i = k; i < n; ++i) r(i, j) -= s * v[i];
    }
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k; i < n; ++i) s += v[i] * q(j, i);
      s *= beta;
      for (std::size_t i = k; i < n; ++i) q(j, i) -= s * v[i];
    }
  }
  // Force positive diagonal and exact zeros below it.
  for (std::size_t i = 0; i < n; ++i) {
    if (r(i, i) < 0.0) {
      for (std::size_t j = i; j < n; ++j) r(i, j) = -r(i, j);
      for (std::size_t j = 0; j < n; ++j) q(j, i) = -q(j, i);
    }
    for (std::size_t k = 0; k < i; ++k) r(i, k) = 0.0;
  }
  const double pivot_floor = tols().rank_pivot * std::max(d.max_abs(), 1e-300);
  for (std::size_t i = 0; i < n; ++i)
    if (!(r(i, i) > pivot_floor)) throw RankDeficient();
  return {std::move(q), std::move(r)};
}

GivensBlock givens_for(double a, double b, std::size_t pivot_row) {
  if (a == 0.0 && b == 0.0) throw DegenerateRotation();
  const double h = std::hypot(a, b);
  return {a / h, b / h, pivot_row};
}

void apply_givens_rows(Matrix& m, const GivensBlock& g, std::size_t col0) {
  const std::size_t i = g.pivot_row;
  for (std::size_t j = col0; j < m.cols(); ++j) {
    const double x = m(i, j);
    const double y = m(i + 1, j);
    m(i, j) = g.c * x + g.s * y;
    m(i + 1, j) = -g.s * x + g.c * y;
  }
}

void apply_givens_cols(Matrix& m, const GivensBlock& g) {
  const std::size_t j = g.pivot_row;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double x = m(i, j);
    const double y = m(i, j + 1);
    m(i, j) = g.c * x + g.s * y;
    m(i, j + 1) = -g.s * x + g.c * y;
  }
}

EigResult symmetric_eig(const Matrix& m_in, bool require_positive_definite) {
  if (m_in.rows() != m_in.cols()) throw DimensionMismatch("symmetric_eig expects a square matrix");
  const std::size_t n = m_in.rows();
  // Symmetrize defensively.
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (m_in(i, j) + m_in(j, i));
  Matrix v = Matrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  const double stop = tols().eig_offdiag * scale;
  const int max_sweeps = 128;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::fabs(a(p, q)));
    if (off <= stop) break;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= stop * 1e-3) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  Vector lambda(n);
  for (std::size_t i = 0; i < n; ++i) lambda[i] = a(i, i);
  // Sort descending, carrying eigenvectors along.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return lambda[x] > lambda[y]; });
  Matrix vs(n, n);
  Vector ls(n);
  for (std::size_t j = 0; j < n; ++j) {
    ls[j] = lambda[order[j]];
    for (std::size_t i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
  }
  if (require_positive_definite && ls.back() <= tols().eig_positive)
    throw NotPositiveDefinite();
  return {std::move(vs), std::move(ls)};
}

double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("dot dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm_sq(const Vector& v) { return dot(v, v); }

double norm(const Vector& v) { return std::sqrt(norm_sq(v)); }

Vector back_substitute(const Matrix& r, const Vector& b) {
  const std::size_t k = b.size();
  if (k > r.rows() || k > r.cols()) throw DimensionMismatch("back_substitute block out of range");
  Vector x(k, 0.0);
  for (std::size_t ii = k; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < k; ++j) s -= r(ii, j) * x[j];
    if (r(ii, ii) == 0.0) throw RankDeficient("zero pivot in back substitution");
    x[ii] = s / r(ii, ii);
  }
  return x;
}

Vector solve_spd(const Matrix& m, const Vector& b) {
  const QrFactors qr = qr_decompose(m);
  Vector qtb(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) qtb[i] += qr.q(j, i) * b[j];
  return back_substitute(qr.r, qtb);
}

}  // namespace latred
