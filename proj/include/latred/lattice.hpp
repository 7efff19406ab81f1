#ifndef LATRED_LATTICE_HPP
#define LATRED_LATTICE_HPP

#include <iosfwd>
#include <string>

#include "latred/instrument.hpp"
#include "latred/matrix.hpp"
#include "latred/unimodular.hpp"

namespace latred {

/// Square full-rank basis; columns d_1..d_n are the basis vectors.
class LatticeBasis {
 public:
  explicit LatticeBasis(Matrix d);

  std::size_t rank() const { return d_.rows(); }
  const Matrix& matrix() const { return d_; }
  Vector column(std::size_t j) const { return d_.column(j); }

 private:
  Matrix d_;
};

struct GsoData {
  Matrix mu;           // lower triangular, unit diagonal
  Vector star_norms;   // ||d_i*||
};

struct ReductionOutcome {
  LatticeBasis basis;
  UnimodularMatrix transform;
  FlopCounter counter;
};

GsoData gso(const LatticeBasis& basis);

/// prod ||d_i|| / sqrt(det(D^T D)); >= 1 by Hadamard's inequality.
double orthogonality_defect(const LatticeBasis& basis);
double log_orthogonality_defect(const LatticeBasis& basis);

/// max_i ||d_i||.
double basis_length(const LatticeBasis& basis);

/// ln of prod r_ii^{2(n-i+1)} for an upper-triangular r with positive diagonal.
double potential(const Matrix& r);

/// Covering-radius bound (1/2) sqrt(sum r_kk^2) from a deep-hole Babai solve.
double covering_radius_upper(const Matrix& r);

/// 1 for n = 1, else 2n/3 (Minkowski-based bound on Hermite's constant).
double hermite_upper(std::size_t n);

/// Basis of the dual lattice, D^{-T}.
LatticeBasis dual_basis(const LatticeBasis& basis);

LatticeBasis apply_unimodular(const LatticeBasis& basis, const UnimodularMatrix& t);

// Shared matrix text format: first line "rows cols", then one
// whitespace-separated row per line. Ragged rows are rejected.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);
void write_matrix(std::ostream& out, const Matrix& m);
void write_matrix_file(const std::string& path, const Matrix& m);
Matrix unimodular_to_matrix(const UnimodularMatrix& t);

}  // namespace latred

#endif
