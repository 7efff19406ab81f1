#include "latred/lattice.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace latred {

LatticeBasis::LatticeBasis(Matrix d) : d_(std::move(d)) {
  if (d_.rows() != d_.cols()) throw DimensionMismatch("lattice basis must be square");
  qr_decompose(d_);  // throws RankDeficient when a pivot underflows
}

GsoData gso(const LatticeBasis& basis) {
  const Matrix& d = basis.matrix();
  const std::size_t n = basis.rank();
  Matrix star(n, n);  // columns d_i*
  Matrix mu = Matrix::identity(n);
  Vector star_norms(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector di = d.column(i);
    for (std::size_t j = 0; j < i; ++j) {
      const Vector sj = star.column(j);
      const double m = dot(d.column(i), sj) / dot(sj, sj);
      mu(i, j) = m;
      for (std::size_t k = 0; k < n; ++k) di[k] -= m * sj[k];
    }
    star.set_column(i, di);
    star_norms[i] = norm(di);
    if (!(star_norms[i] > 0.0)) throw RankDeficient("vanishing GSO vector");
  }
  return {std::move(mu), std::move(star_norms)};
}

double log_orthogonality_defect(const LatticeBasis& basis) {
  const QrFactors qr = qr_decompose(basis.matrix());
  double ln_num = 0.0;
  double ln_det = 0.0;
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    ln_num += std::log(norm(basis.column(i)));
    ln_det += std::log(qr.r(i, i));
  }
  return ln_num - ln_det;
}

double orthogonality_defect(const LatticeBasis& basis) {
  return std::exp(log_orthogonality_defect(basis));
}

double basis_length(const LatticeBasis& basis) {
  double l = 0.0;
  for (std::size_t i = 0; i < basis.rank(); ++i) l = std::max(l, norm(basis.column(i)));
  return l;
}

double potential(const Matrix& r) {
  if (r.rows() != r.cols()) throw DimensionMismatch("potential expects a square matrix");
  const std::size_t n = r.rows();
  double ln_pot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(r(i, i) > 0.0)) throw NonPositiveDiagonal();
    ln_pot += 2.0 * static_cast<double>(n - i) * std::log(r(i, i));
  }
  return ln_pot;
}

double covering_radius_upper(const Matrix& r) {
  if (r.rows() != r.cols()) throw DimensionMismatch("covering_radius_upper expects a square matrix");
  double s = 0.0;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    if (!(r(i, i) > 0.0)) throw NonPositiveDiagonal();
    s += r(i, i) * r(i, i);
  }
  return 0.5 * std::sqrt(s);
}

double hermite_upper(std::size_t n) {
  if (n < 1) throw DimensionMismatch("hermite_upper expects n >= 1");
  return n == 1 ? 1.0 : 2.0 * static_cast<double>(n) / 3.0;
}

LatticeBasis dual_basis(const LatticeBasis& basis) {
  // D^{-T} = Q R^{-T}; R^{-T} columns come from back substitution.
  const QrFactors qr = qr_decompose(basis.matrix());
  const std::size_t n = basis.rank();
  Matrix rinv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Vector e(n, 0.0);
    e[j] = 1.0;
    rinv.set_column(j, back_substitute(qr.r, e));
  }
  return LatticeBasis(qr.q * rinv.transpose());
}

LatticeBasis apply_unimodular(const LatticeBasis& basis, const UnimodularMatrix& t) {
  if (t.size() != basis.rank()) throw DimensionMismatch("unimodular transform rank mismatch");
  return LatticeBasis(basis.matrix() * unimodular_to_matrix(t));
}

Matrix unimodular_to_matrix(const UnimodularMatrix& t) {
  const std::size_t n = t.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = static_cast<double>(t(i, j));
  return m;
}

Matrix read_matrix(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty matrix input");
  std::istringstream hs(header);
  long rows = 0, cols = 0;
  if (!(hs >> rows >> cols) || rows < 1 || cols < 1)
    throw ParseError("matrix header must be 'rows cols'");
  std::string tail;
  if (hs >> tail) throw ParseError("trailing tokens in matrix header");
  Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
  for (long i = 0; i < rows; ++i) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError("missing matrix row " + std::to_string(i + 1));
    std::istringstream ls(line);
    for (long j = 0; j < cols; ++j) {
      double v;
      if (!(ls >> v)) throw ParseError("short row " + std::to_string(i + 1));
      if (!std::isfinite(v)) throw ParseError("non-finite entry in row " + std::to_string(i + 1));
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
    }
    std::string extra;
    if (ls >> extra) throw ParseError("ragged row " + std::to_string(i + 1));
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_matrix(in);
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m(i, j);
    }
    out << '\n';
  }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open " + path + " for writing");
  write_matrix(out, m);
}

}  // namespace latred
