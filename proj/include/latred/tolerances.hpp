#ifndef LATRED_TOLERANCES_HPP
#define LATRED_TOLERANCES_HPP

namespace latred {

/// Repo-wide numeric tolerances. Every module reads its thresholds from here
/// instead of hard-coding magic numbers at the call sites.
struct Tolerances {
  double qr_orthonormality = 1e-9;       // ||Q^T Q - I||_max <= tol * n
  double qr_reconstruction = 1e-9;       // ||QR - D||_max <= tol * n * ||D||_max
  double rank_pivot = 1e-12;             // |r_ii| > tol * ||D||_max
  double givens_unit = 1e-12;            // |c^2 + s^2 - 1|
  double eig_offdiag = 1e-12;            // Jacobi stop: max offdiag <= tol * ||M||_max
  double eig_reconstruction = 1e-8;      // ||V L V^T - M||_max <= tol * n * ||M||_max
  double eig_positive = 1e-12;           // smallest admissible eigenvalue for SPD use
  double symmetry = 1e-10;               // max |m_ij - m_ji| before symmetrizing
  double gso_match = 1e-9;               // star norms vs QR diagonal
  double det_relative = 1e-8;            // relative slack on determinant identities
  double size_reduce_slack = 1e-12;      // |component| <= |r_kk|/2 + slack
  double enum_relative = 1e-9;           // relative slack in optimality comparisons
  double unimodular_residual = 1e-8;     // ||D_in T - D_out||_max <= tol * ||D_in||_max
  double q_drift = 1e-8;                 // re-orthogonalize when ||Q^T Q - I||_max exceeds this
};

inline const Tolerances& tols() {
  static const Tolerances t{};
  return t;
}

}  // namespace latred

#endif
