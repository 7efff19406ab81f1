#ifndef LATRED_UNIMODULAR_HPP
#define LATRED_UNIMODULAR_HPP

#include <cstdint>
#include <vector>

#include "latred/errors.hpp"

namespace latred {

// Overflow-checked signed 64-bit helpers. Wrapping is never acceptable here;
// an overflow aborts the enclosing reduction with a distinct error.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Overflow();
  return r;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow();
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
  return r;
}

inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

using IntVector = std::vector<std::int64_t>;

/// Exact integer n x n matrix with determinant +-1, accumulated by every
/// reduction. All entry updates use checked arithmetic.
class UnimodularMatrix {
 public:
  UnimodularMatrix() = default;
  explicit UnimodularMatrix(std::size_t n);  // identity
  UnimodularMatrix(std::size_t n, std::vector<std::int64_t> entries);

  static UnimodularMatrix identity(std::size_t n) { return UnimodularMatrix(n); }

  std::size_t size() const { return n_; }
  std::int64_t& operator()(std::size_t i, std::size_t j) { return t_[i * n_ + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return t_[i * n_ + j]; }

  // Elementary column operations (each preserves |det| = 1).
  void swap_columns(std::size_t a, std::size_t b);
  void negate_column(std::size_t j);
  void add_multiple_of_column(std::size_t dst, std::size_t src, std::int64_t factor);

  /// col_dst <- sum_j coeffs[j] * col_j over columns [0, coeffs.size()).
  /// coeffs[dst] must be +-1 so the operation stays unimodular.
  void combine_into_column(std::size_t dst, const IntVector& coeffs);

  IntVector column(std::size_t j) const;
  void set_column(std::size_t j, const IntVector& v);

  /// T * c with checked arithmetic.
  IntVector multiply(const IntVector& c) const;

  /// Right-multiplies columns [col0, col0 + u.size()) by u.
  void multiply_block_right(std::size_t col0, const UnimodularMatrix& u);

  /// Exact determinant by fraction-free (Bareiss) elimination in 128-bit
  /// intermediates; throws Overflow if even that width is exceeded.
  std::int64_t determinant() const;

  /// Determinant check: throws NotUnimodular unless det = +-1.
  void verify_unimodular() const;

  std::int64_t max_abs() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::int64_t> t_;
};

/// Exact rank of a set of integer vectors (rows), via fraction-free elimination.
std::size_t integer_rank(std::vector<IntVector> rows);

std::int64_t gcd64(std::int64_t a, std::int64_t b);

}  // namespace latred

#endif
