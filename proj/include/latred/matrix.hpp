#ifndef LATRED_MATRIX_HPP
#define LATRED_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "latred/errors.hpp"
#include "latred/tolerances.hpp"

namespace latred {

using Vector = std::vector<double>;

/// Dense real matrix, row-major. Entries must be finite on construction.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static Matrix identity(std::size_t n);
  static Matrix diagonal(const Vector& d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }

  Matrix transpose() const;
  Matrix operator*(const Matrix& rhs) const;
  Vector operator*(const Vector& v) const;
  Matrix operator+(const Matrix& rhs) const;
  Matrix operator-(const Matrix& rhs) const;
  Matrix scaled(double a) const;

  Vector column(std::size_t j) const;
  void set_column(std::size_t j, const Vector& v);
  void swap_columns(std::size_t a, std::size_t b);

  Matrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;

  double max_abs() const;
  bool finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> e_;
};

struct QrFactors {
  Matrix q;  // orthonormal columns
  Matrix r;  // upper triangular, positive diagonal
};

/// 2x2 rotation [[c, s], [-s, c]] acting on a row pair.
struct GivensBlock {
  double c;
  double s;
  std::size_t pivot_row;  // acts on rows (pivot_row, pivot_row + 1)
};

/// Householder QR with the sign convention r_ii > 0.
QrFactors qr_decompose(const Matrix& d);

/// Rotation taking column (a, b)^T to (sqrt(a^2 + b^2), 0)^T.
GivensBlock givens_for(double a, double b, std::size_t pivot_row = 0);

/// Applies g to rows (pivot_row, pivot_row + 1) of m, columns [col0, m.cols()).
void apply_givens_rows(Matrix& m, const GivensBlock& g, std::size_t col0 = 0);

/// Applies g^T to columns (pivot_row, pivot_row + 1) of m, i.e. m <- m G^T.
void apply_givens_cols(Matrix& m, const GivensBlock& g);

/// Eigendecomposition of a symmetric matrix via cyclic Jacobi sweeps.
/// Eigenvalues sorted descending; columns of v are the matching eigenvectors.
/// With require_positive_definite, throws NotPositiveDefinite when an
/// eigenvalue falls below the positivity threshold.
struct EigResult {
  Matrix v;
  Vector lambda;
};
EigResult symmetric_eig(const Matrix& m, bool require_positive_definite = false);

// Small vector helpers shared across modules.
double dot(const Vector& a, const Vector& b);
double norm_sq(const Vector& v);
double norm(const Vector& v);

/// Solves R x = b for upper-triangular R (leading k x k block when k < R.cols()).
Vector back_substitute(const Matrix& r, const Vector& b);

/// Solves the SPD system m x = b through QR factors.
Vector solve_spd(const Matrix& m, const Vector& b);

}  // namespace latred

#endif
