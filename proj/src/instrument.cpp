#include "latred/instrument.hpp"

#include <cmath>

#include "latred/errors.hpp"

namespace latred {

double unit_ball_volume(std::size_t m) {
  if (m == 0) return 1.0;
  const double md = static_cast<double>(m);
  return std::exp(0.5 * md * std::log(M_PI) - std::lgamma(1.0 + 0.5 * md));
}

double estimate_nodes(const std::vector<double>& r_diag, std::size_t k, double s) {
  const std::size_t m = r_diag.size();
  if (k < 1 || k > m) throw DimensionMismatch("estimate_nodes: layer out of range");
  if (!(s > 0.0)) throw Error("estimate_nodes: radius must be positive");
  const std::size_t dim = m - k + 1;
  double log_den = 0.0;
  for (std::size_t j = k - 1; j < m; ++j) {
    const double a = std::fabs(r_diag[j]);
    if (a == 0.0) throw NonPositiveDiagonal("estimate_nodes: zero diagonal entry");
    log_den += std::log(a);
  }
  const double dd = static_cast<double>(dim);
  const double log_vol = 0.5 * dd * std::log(M_PI) - std::lgamma(1.0 + 0.5 * dd);
  return std::exp(log_vol + dd * std::log(s) - log_den);
}

double estimate_enum_flops(const std::vector<double>& r_diag, double s, EnumMode /*mode*/) {
  double total = 0.0;
  for (std::size_t k = 1; k <= r_diag.size(); ++k)
    total += estimate_nodes(r_diag, k, s) * static_cast<double>(2 * k + 7);
  return total;
}

}  // namespace latred
