#include "latred/unimodular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace latred {

namespace {

using int128 = __int128;

constexpr int128 kInt128Max = (int128(1) << 126) - 1 + (int128(1) << 126);

int128 mul128(int128 a, int128 b) {
  if (a == 0 || b == 0) return 0;
  // Magnitude guard; exact products of two 64-bit values always fit, this
  // catches growth across repeated Bareiss steps.
  int128 aa = a < 0 ? -a : a;
  int128 bb = b < 0 ? -b : b;
  if (aa > kInt128Max / bb) throw Overflow("128-bit overflow in exact determinant");
  return a * b;
}

}  // namespace

UnimodularMatrix::UnimodularMatrix(std::size_t n) : n_(n), t_(n * n, 0) {
  if (n == 0) throw DimensionMismatch("unimodular matrix must be at least 1x1");
  for (std::size_t i = 0; i < n; ++i) (*this)(i, i) = 1;
}

UnimodularMatrix::UnimodularMatrix(std::size_t n, std::vector<std::int64_t> entries)
    : n_(n), t_(std::move(entries)) {
  if (n == 0) throw DimensionMismatch("unimodular matrix must be at least 1x1");
  if (t_.size() != n * n) throw DimensionMismatch("entry count does not match dimension");
}

void UnimodularMatrix::swap_columns(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < n_; ++i) std::swap((*this)(i, a), (*this)(i, b));
}

void UnimodularMatrix::negate_column(std::size_t j) {
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = checked_neg((*this)(i, j));
}

void UnimodularMatrix::add_multiple_of_column(std::size_t dst, std::size_t src, std::int64_t factor) {
  if (factor == 0) return;
  for (std::size_t i = 0; i < n_; ++i)
    (*this)(i, dst) = checked_add((*this)(i, dst), checked_mul(factor, (*this)(i, src)));
}

void UnimodularMatrix::combine_into_column(std::size_t dst, const IntVector& coeffs) {
  if (dst >= coeffs.size() || std::llabs(coeffs[dst]) != 1)
    throw NotUnimodular("column combination must keep a unit coefficient on the target column");
  IntVector out(n_, 0);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] == 0) continue;
    for (std::size_t i = 0; i < n_; ++i)
      out[i] = checked_add(out[i], checked_mul(coeffs[j], (*this)(i, j)));
  }
  set_column(dst, out);
}

IntVector UnimodularMatrix::column(std::size_t j) const {
  IntVector v(n_);
  for (std::size_t i = 0; i < n_; ++i) v[i] = (*this)(i, j);
  return v;
}

void UnimodularMatrix::set_column(std::size_t j, const IntVector& v) {
  if (v.size() != n_) throw DimensionMismatch("column length mismatch");
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, j) = v[i];
}

IntVector UnimodularMatrix::multiply(const IntVector& c) const {
  if (c.size() != n_) throw DimensionMismatch("unimodular product dimension mismatch");
  IntVector out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      if (c[j] != 0) out[i] = checked_add(out[i], checked_mul((*this)(i, j), c[j]));
  return out;
}

void UnimodularMatrix::multiply_block_right(std::size_t col0, const UnimodularMatrix& u) {
  const std::size_t m = u.size();
  if (col0 + m > n_) throw DimensionMismatch("block product out of range");
  for (std::size_t i = 0; i < n_; ++i) {
    IntVector row(m, 0);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k)
        if (u(k, j) != 0)
          row[j] = checked_add(row[j], checked_mul((*this)(i, col0 + k), u(k, j)));
    for (std::size_t j = 0; j < m; ++j) (*this)(i, col0 + j) = row[j];
  }
}

std::int64_t UnimodularMatrix::determinant() const {
  const std::size_t n = n_;
  std::vector<int128> a(n * n);
  for (std::size_t k = 0; k < n * n; ++k) a[k] = t_[k];
  auto at = [&](std::size_t i, std::size_t j) -> int128& { return a[i * n + j]; };
  int sign = 1;
  int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && at(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        int128 num = mul128(at(i, j), at(k, k)) - mul128(at(i, k), at(k, j));
        at(i, j) = num / prev;  // exact division in Bareiss elimination
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  int128 det = sign > 0 ? at(n - 1, n - 1) : -at(n - 1, n - 1);
  if (det > std::int64_t(9223372036854775807LL) || det < -std::int64_t(9223372036854775807LL) - 1)
    throw Overflow("determinant exceeds 64-bit range");
  return static_cast<std::int64_t>(det);
}

void UnimodularMatrix::verify_unimodular() const {
  const std::int64_t d = determinant();
  if (d != 1 && d != -1) throw NotUnimodular("determinant is " + std::to_string(d));
}

std::int64_t UnimodularMatrix::max_abs() const {
  std::int64_t m = 0;
  for (std::int64_t x : t_) m = std::max<std::int64_t>(m, std::llabs(x));
  return m;
}

std::size_t integer_rank(std::vector<IntVector> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows[0].size();
  std::vector<std::vector<int128>> a;
  a.reserve(rows.size());
  for (const auto& r : rows) {
    if (r.size() != ncols) throw DimensionMismatch("ragged rows in integer_rank");
    a.emplace_back(r.begin(), r.end());
  }
  // Euclidean row elimination: exact, and entries stay small for the
  // brute-force coefficient vectors this is used on.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < ncols && rank < a.size(); ++col) {
    bool again = true;
    while (again) {
      again = false;
      std::size_t p = rank;
      for (std::size_t i = rank; i < a.size(); ++i) {
        if (a[i][col] == 0) continue;
        if (a[p][col] == 0 || (a[i][col] < 0 ? -a[i][col] : a[i][col]) <
                                  (a[p][col] < 0 ? -a[p][col] : a[p][col]))
          p = i;
      }
      if (a[p][col] == 0) break;
      std::swap(a[rank], a[p]);
      for (std::size_t i = rank + 1; i < a.size(); ++i) {
        if (a[i][col] == 0) continue;
        const int128 q = a[i][col] / a[rank][col];
        for (std::size_t j = col; j < ncols; ++j) a[i][j] -= mul128(q, a[rank][j]);
        if (a[i][col] != 0) again = true;
      }
    }
    if (a[rank][col] != 0) ++rank;
  }
  return rank;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

}  // namespace latred
