#include "latred/integer_forcing.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "latred/reduce_kz.hpp"
#include "latred/reduce_lll.hpp"
#include "latred/rng.hpp"

namespace latred {

IfInstance::IfInstance(Matrix channel, double snr_linear) : h(std::move(channel)), p(snr_linear) {
  if (h.rows() != h.cols()) throw DimensionMismatch("channel matrix must be square");
  if (!(p > 0.0)) throw Error("SNR must be positive");
}

ReducerSpec ReducerSpec::parse(const std::string& name) {
  ReducerSpec s;
  auto routes_suffix = [&](const std::string& prefix) -> bool {
    if (name.rfind(prefix, 0) != 0) return false;
    const std::string tail = name.substr(prefix.size());
    std::istringstream in(tail);
    std::uint64_t l = 0;
    char extra;
    if (!(in >> l) || l < 1 || in.get(extra)) throw ParseError("bad route count in '" + name + "'");
    s.kind = Kind::BoostedLll;
    s.routes = l;
    return true;
  };
  if (name == "lll") {
    s.kind = Kind::Lll;
  } else if (name == "kz") {
    s.kind = Kind::Kz;
  } else if (name == "bkz" || name == "boosted-kz") {
    s.kind = Kind::BoostedKz;
  } else if (name == "blll") {
    s.kind = Kind::BoostedLll;
  } else if (!routes_suffix("blll-") && !routes_suffix("boosted-lll-")) {
    throw ParseError("unknown reducer '" + name + "'");
  }
  return s;
}

std::string ReducerSpec::name() const {
  switch (kind) {
    case Kind::Lll:
      return "lll";
    case Kind::BoostedLll:
      return "blll-" + std::to_string(routes);
    case Kind::Kz:
      return "kz";
    case Kind::BoostedKz:
      return "bkz";
  }
  throw Error("unreachable");
}

ReductionOutcome ReducerSpec::reduce(const LatticeBasis& basis) const {
  switch (kind) {
    case Kind::Lll:
      return lll_reduce(basis, 0.75);
    case Kind::BoostedLll:
      return boosted_lll_reduce(basis, PnpConfig::from_total_routes(routes));
    case Kind::Kz: {
      KzConfig cfg;
      cfg.rank_cap = kz_rank_cap;
      return kz_reduce(basis, cfg);
    }
    case Kind::BoostedKz: {
      KzConfig cfg;
      cfg.rank_cap = kz_rank_cap;
      return boosted_kz_reduce(basis, cfg);
    }
  }
  throw Error("unreachable");
}

namespace {

Matrix gram_plus_regularizer(const Matrix& h, double p, bool transpose_first) {
  const std::size_t n = h.rows();
  const Matrix g = transpose_first ? h.transpose() * h : h * h.transpose();
  Matrix m = g;
  for (std::size_t i = 0; i < n; ++i) m(i, i) += 1.0 / p;
  return m;
}

}  // namespace

LatticeBasis effective_basis(const IfInstance& inst) {
  const std::size_t n = inst.h.rows();
  const Matrix m = gram_plus_regularizer(inst.h, inst.p, /*transpose_first=*/true);
  const EigResult eig = symmetric_eig(m, /*require_positive_definite=*/true);
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = 1.0 / std::sqrt(eig.lambda[i]);
    for (std::size_t j = 0; j < n; ++j) d(i, j) = scale * eig.v(j, i);
  }
  return LatticeBasis(std::move(d));
}

UnimodularMatrix if_coefficients(const LatticeBasis& d, const ReducerSpec& reducer,
                                 FlopCounter* fc) {
  ReductionOutcome out = reducer.reduce(d);
  if (fc) fc->merge(out.counter);
  const std::size_t n = d.rank();
  UnimodularMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = out.transform(j, i);  // rows a_i^T = T columns
  return a;
}

Matrix optimal_projection(const IfInstance& inst, const UnimodularMatrix& a) {
  const std::size_t n = inst.h.rows();
  if (a.size() != n) throw DimensionMismatch("coefficient matrix rank mismatch");
  const Matrix m = gram_plus_regularizer(inst.h, inst.p, /*transpose_first=*/false);
  Matrix b(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vector ha(n, 0.0);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) ha[r] += inst.h(r, c) * static_cast<double>(a(i, c));
    const Vector bi = solve_spd(m, ha);
    for (std::size_t c = 0; c < n; ++c) b(i, c) = bi[c];
  }
  return b;
}

double computation_rate(const IfInstance& inst, const IntVector& a_i) {
  const std::size_t n = inst.h.rows();
  if (a_i.size() != n) throw DimensionMismatch("coefficient vector length mismatch");
  bool zero = true;
  for (std::int64_t v : a_i) zero = zero && v == 0;
  if (zero) throw ZeroVector("integer-forcing coefficient vector is zero");
  const LatticeBasis d = effective_basis(inst);
  Vector da(n, 0.0);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) da[r] += d.matrix()(r, c) * static_cast<double>(a_i[c]);
  const double ratio = inst.p / norm_sq(da);
  return ratio <= 1.0 ? 0.0 : 0.5 * std::log2(ratio);
}

double channel_capacity(const IfInstance& inst) {
  const Matrix g = inst.h * inst.h.transpose();
  const EigResult eig = symmetric_eig(g);
  double c = 0.0;
  for (double l : eig.lambda) c += 0.5 * std::log2(1.0 + inst.p * std::max(l, 0.0));
  return c;
}

RateReport analyze_instance(const IfInstance& inst, const ReducerSpec& reducer) {
  const std::size_t n = inst.h.rows();
  const LatticeBasis d = effective_basis(inst);
  ReductionOutcome out = reducer.reduce(d);

  UnimodularMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = out.transform(j, i);
  a.verify_unimodular();

  Vector rates(n);
  double min_rate = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    // column i of the reduced basis is D a_i
    const double len_sq = norm_sq(out.basis.column(i));
    const double ratio = inst.p / len_sq;
    rates[i] = ratio <= 1.0 ? 0.0 : 0.5 * std::log2(ratio);
    min_rate = i == 0 ? rates[i] : std::min(min_rate, rates[i]);
  }
  Matrix b = optimal_projection(inst, a);
  return {std::move(a),
          std::move(b),
          std::move(rates),
          min_rate,
          log_orthogonality_defect(out.basis),
          out.counter};
}

Matrix sample_channel(std::size_t n, std::uint64_t seed, std::uint64_t trial) {
  GaussianStream g(seed ^ trial);
  Matrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = g.next();
  return h;
}

std::vector<SweepRow> ergodic_rate_sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw Error("sweep needs at least one trial");
  if (cfg.n < 1) throw DimensionMismatch("sweep rank must be >= 1");

  std::vector<Matrix> channels;
  channels.reserve(cfg.trials);
  for (std::uint64_t t = 0; t < cfg.trials; ++t)
    channels.push_back(sample_channel(cfg.n, cfg.seed, t));

  std::vector<SweepRow> rows;
  for (double snr_db : cfg.snr_db_grid) {
    const double p = std::pow(10.0, snr_db / 10.0);
    for (const ReducerSpec& reducer : cfg.reducers) {
      double sum_rate = 0.0, sum_cap = 0.0, sum_ln_od = 0.0, sum_flops = 0.0;
      std::uint64_t ok = 0, failed = 0;
      for (std::uint64_t t = 0; t < cfg.trials; ++t) {
        const IfInstance inst(channels[t], p);
        try {
          const RateReport rep = analyze_instance(inst, reducer);
          sum_rate += static_cast<double>(cfg.n) * rep.min_rate;
          sum_cap += channel_capacity(inst);
          sum_ln_od += rep.sum_metric_od;
          sum_flops += static_cast<double>(rep.counter.flops);
          ++ok;
        } catch (const Error&) {
          ++failed;
        }
      }
      const double denom = ok > 0 ? static_cast<double>(ok) : 1.0;
      rows.push_back({snr_db, reducer.name(), sum_rate / denom, sum_cap / denom,
                      sum_ln_od / denom, sum_flops / denom, failed});
    }
  }
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "snr_db,reducer,ergodic_rate,capacity,mean_ln_od,mean_flops,failed_trials\n";
  out << std::setprecision(17);
  for (const SweepRow& r : rows)
    out << r.snr_db << ',' << r.reducer << ',' << r.ergodic_rate << ',' << r.capacity << ','
        << r.mean_ln_od << ',' << r.mean_flops << ',' << r.failed_trials << '\n';
}

}  // namespace latred
