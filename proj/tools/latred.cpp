// latred: lattice reduction toolkit command line.
//   reduce  - reduce a basis from a file, write D_out and T
//   svp     - shortest nonzero lattice vector of a basis
//   cvp     - closest lattice vector to a target
//   if-sim  - integer-forcing ergodic-rate Monte Carlo sweep (CSV)
//   bench   - reduction cost comparison across dimensions (CSV)
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "latred/enumerate.hpp"
#include "latred/integer_forcing.hpp"
#include "latred/reduce_kz.hpp"
#include "latred/reduce_lll.hpp"

namespace {

using namespace latred;

std::size_t kz_cap_from_env() {
  const char* env = std::getenv("LATRED_MAX_KZ_DIM");
  if (!env || !*env) return 12;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (!end || *end || v < 1) throw ParseError("LATRED_MAX_KZ_DIM must be a positive integer");
  return static_cast<std::size_t>(v);
}

Vector read_vector_file(const std::string& path) {
  const Matrix m = read_matrix_file(path);
  if (m.cols() == 1) return m.column(0);
  if (m.rows() == 1) {
    Vector v(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) v[j] = m(0, j);
    return v;
  }
  throw ParseError("target must be a single row or column");
}

RadiusSchedule parse_radius(const std::string& s) {
  if (s == "packing") return RadiusSchedule::packing_start();
  if (s == "first-column") return RadiusSchedule::first_column();
  std::istringstream in(s);
  double v = 0.0;
  char extra;
  if (!(in >> v) || in.get(extra) || !(v > 0.0))
    throw ParseError("--radius must be packing, first-column or a positive number");
  return RadiusSchedule::fixed(v);
}

std::vector<ReducerSpec> parse_reducers(const std::string& list, std::size_t kz_cap) {
  std::vector<ReducerSpec> specs;
  std::istringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    ReducerSpec s = ReducerSpec::parse(item);
    s.kz_rank_cap = kz_cap;
    specs.push_back(s);
  }
  if (specs.empty()) throw ParseError("--reducers list is empty");
  return specs;
}

std::vector<double> parse_snr_range(const std::string& s) {
  // start:step:stop inclusive, or a single value
  std::vector<double> parts;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ':')) {
    std::istringstream ts(tok);
    double v;
    char extra;
    if (!(ts >> v) || ts.get(extra)) throw ParseError("bad --snr-db component '" + tok + "'");
    parts.push_back(v);
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw ParseError("--snr-db wants start:step:stop or a single value");
  const double start = parts[0], step = parts[1], stop = parts[2];
  if (!(step > 0.0)) throw ParseError("--snr-db step must be positive");
  std::vector<double> grid;
  for (double v = start; v <= stop + 1e-9; v += step) grid.push_back(v);
  if (grid.empty()) throw ParseError("empty --snr-db range");
  return grid;
}

int cmd_reduce(const std::string& algo, const std::string& delta_arg, std::uint64_t routes,
               const std::string& in_path, const std::string& out_path,
               const std::string& out_t_path, bool verify) {
  const LatticeBasis basis(read_matrix_file(in_path));
  const std::size_t n = basis.rank();

  ReductionOutcome out = [&] {
    auto delta_value = [&] {
      if (delta_arg == "auto") return optimal_delta(std::max<std::size_t>(n, 2));
      std::istringstream ds(delta_arg);
      double v;
      char extra;
      if (!(ds >> v) || ds.get(extra)) throw ParseError("--delta must be a real or 'auto'");
      return v;
    };
    if (algo == "lll") return lll_reduce(basis, delta_arg.empty() ? 0.75 : delta_value());
    if (algo == "blll") {
      const PnpConfig cfg = PnpConfig::from_total_routes(routes);
      if (delta_arg.empty() || delta_arg == "auto") return boosted_lll_reduce(basis, cfg);
      return boosted_lll_reduce(basis, delta_value(), cfg);
    }
    KzConfig cfg;
    cfg.rank_cap = kz_cap_from_env();
    if (algo == "kz") return kz_reduce(basis, cfg);
    if (algo == "bkz") return boosted_kz_reduce(basis, cfg);
    throw ParseError("--algo must be one of lll, blll, kz, bkz");
  }();

  out.transform.verify_unimodular();
  if (verify) {
    const Matrix recon = basis.matrix() * unimodular_to_matrix(out.transform);
    const Matrix diff = recon - out.basis.matrix();
    const double scale = std::max(1.0, out.basis.matrix().max_abs());
    if (diff.max_abs() > 1e-8 * scale) throw Error("verification failed: D_in * T != D_out");
  }
  if (!out_path.empty()) write_matrix_file(out_path, out.basis.matrix());
  if (!out_t_path.empty()) write_matrix_file(out_t_path, unimodular_to_matrix(out.transform));

  std::cout << std::setprecision(17) << "algo=" << algo
            << " ln_od=" << log_orthogonality_defect(out.basis)
            << " basis_len=" << basis_length(out.basis) << " flops=" << out.counter.flops
            << " swaps=" << out.counter.swaps << '\n';
  return 0;
}

int cmd_enum(bool svp, const std::string& in_path, const std::string& target_path,
             const std::string& radius_arg, bool check) {
  const LatticeBasis basis(read_matrix_file(in_path));
  const QrFactors qr = qr_decompose(basis.matrix());
  RadiusSchedule radius =
      radius_arg.empty()
          ? (svp ? RadiusSchedule::first_column() : RadiusSchedule::packing_start())
          : parse_radius(radius_arg);

  EnumerationProblem problem{qr.r, std::nullopt, radius};
  Vector target;
  if (!svp) {
    target = read_vector_file(target_path);
    if (target.size() != basis.rank()) throw DimensionMismatch("target length must match rank");
    // rotate the target into the triangular frame: solve via Q^T t
    Vector qt(basis.rank(), 0.0);
    for (std::size_t i = 0; i < basis.rank(); ++i)
      for (std::size_t k = 0; k < basis.rank(); ++k) qt[i] += qr.q(k, i) * target[k];
    problem.target = qt;
  }
  const EnumerationResult res = svp ? solve_svp(problem) : solve_cvp(problem);

  if (check) {
    if (basis.rank() > 5) throw RankTooLarge("--check supports rank <= 5");
    if (svp) {
      const Vector minima = successive_minima(basis, 6);
      const double l1 = minima[0];
      if (std::fabs(std::sqrt(res.point_norm_sq) - l1) > 1e-6 * std::max(1.0, l1))
        throw Error("oracle mismatch: enumeration missed lambda_1");
    } else {
      const EnumerationResult oracle = brute_force_cvp(qr.r, *problem.target, 8);
      if (std::fabs(oracle.point_norm_sq - res.point_norm_sq) >
          1e-6 * std::max(1.0, res.point_norm_sq))
        throw Error("oracle mismatch: enumeration missed the closest vector");
    }
  }

  std::cout << std::setprecision(17) << "coeffs=";
  for (std::size_t i = 0; i < res.coeffs.size(); ++i)
    std::cout << (i ? " " : "") << res.coeffs[i];
  std::cout << (svp ? " norm_sq=" : " dist_sq=") << res.point_norm_sq
            << " nodes=" << res.nodes_visited << '\n';
  return 0;
}

int cmd_if_sim(std::size_t n, const std::string& snr_arg, std::size_t trials, std::uint64_t seed,
               const std::string& reducer_list, const std::string& out_path) {
  SweepConfig cfg;
  cfg.n = n;
  cfg.snr_db_grid = parse_snr_range(snr_arg);
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.reducers = parse_reducers(reducer_list, kz_cap_from_env());
  for (const ReducerSpec& r : cfg.reducers)
    if ((r.kind == ReducerSpec::Kind::Kz || r.kind == ReducerSpec::Kind::BoostedKz) &&
        n > r.kz_rank_cap)
      std::cerr << "warning: " << r.name() << " exceeds the rank cap (" << r.kz_rank_cap
                << "); its trials will fail unless LATRED_MAX_KZ_DIM is raised\n";

  const std::vector<SweepRow> rows = ergodic_rate_sweep(cfg);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + out_path + " for writing");
  write_sweep_csv(out, rows);
  return 0;
}

int cmd_bench(const std::string& dims_arg, std::size_t trials, std::uint64_t seed,
              const std::string& reducer_list, const std::string& out_path) {
  std::vector<std::size_t> dims;
  {
    std::istringstream in(dims_arg);
    std::string tok;
    while (std::getline(in, tok, ',')) {
      std::istringstream ts(tok);
      long v;
      char extra;
      if (!(ts >> v) || ts.get(extra) || v < 1) throw ParseError("bad --dims entry '" + tok + "'");
      dims.push_back(static_cast<std::size_t>(v));
    }
    if (dims.empty()) throw ParseError("--dims list is empty");
  }
  const std::vector<ReducerSpec> reducers = parse_reducers(reducer_list, kz_cap_from_env());
  if (trials < 1) throw ParseError("--trials must be >= 1");

  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot open " + out_path + " for writing");
  out << "dim,reducer,mean_flops,mean_nodes,estimate_flops\n" << std::setprecision(17);

  const double p = std::pow(10.0, 2.0);  // 20 dB operating point
  for (std::size_t n : dims) {
    std::vector<LatticeBasis> bases;
    std::vector<double> estimates;
    for (std::uint64_t t = 0; t < trials; ++t) {
      const IfInstance inst(sample_channel(n, seed, t), p);
      LatticeBasis d = effective_basis(inst);
      const QrFactors qr = qr_decompose(d.matrix());
      std::vector<double> diag(n);
      for (std::size_t i = 0; i < n; ++i) diag[i] = qr.r(i, i);
      estimates.push_back(estimate_enum_flops(diag, covering_radius_upper(qr.r), EnumMode::Cvp));
      bases.push_back(std::move(d));
    }
    const double mean_estimate =
        std::accumulate(estimates.begin(), estimates.end(), 0.0) / static_cast<double>(trials);
    for (const ReducerSpec& reducer : reducers) {
      double sum_flops = 0.0, sum_nodes = 0.0;
      for (const LatticeBasis& d : bases) {
        const ReductionOutcome res = reducer.reduce(d);
        sum_flops += static_cast<double>(res.counter.flops);
        sum_nodes += static_cast<double>(res.counter.nodes);
      }
      out << n << ',' << reducer.name() << ',' << sum_flops / static_cast<double>(trials) << ','
          << sum_nodes / static_cast<double>(trials) << ',' << mean_estimate << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice reduction toolkit"};
  app.require_subcommand(1);

  std::string algo = "lll", delta = "", in_path, out_path, out_t_path, target_path, radius;
  std::string snr = "20", reducers = "lll", dims = "8";
  std::uint64_t routes = 1, seed = 1;
  std::size_t n = 4, trials = 1;
  bool verify = false, check = false;

  CLI::App* reduce = app.add_subcommand("reduce", "reduce a basis");
  reduce->add_option("--algo", algo, "lll, blll, kz or bkz");
  reduce->add_option("--delta", delta, "Lovasz/DR constant, or 'auto'");
  reduce->add_option("--routes", routes, "PNP route count L for blll");
  reduce->add_option("--in", in_path)->required();
  reduce->add_option("--out", out_path);
  reduce->add_option("--out-t", out_t_path);
  reduce->add_flag("--verify", verify, "check D_in * T = D_out");

  CLI::App* svp = app.add_subcommand("svp", "shortest vector");
  svp->add_option("--in", in_path)->required();
  svp->add_option("--radius", radius, "packing, first-column or a value");
  svp->add_flag("--check", check, "cross-check with the brute-force oracle");

  CLI::App* cvp = app.add_subcommand("cvp", "closest vector");
  cvp->add_option("--in", in_path)->required();
  cvp->add_option("--target", target_path)->required();
  cvp->add_option("--radius", radius, "packing, first-column or a value");
  cvp->add_flag("--check", check, "cross-check with the brute-force oracle");

  CLI::App* ifsim = app.add_subcommand("if-sim", "integer-forcing rate sweep");
  ifsim->add_option("--n", n)->required();
  ifsim->add_option("--snr-db", snr, "start:step:stop (dB), inclusive");
  ifsim->add_option("--trials", trials)->required();
  ifsim->add_option("--seed", seed);
  ifsim->add_option("--reducers", reducers, "comma list: lll, blll-L, kz, bkz");
  ifsim->add_option("--out", out_path)->required();

  CLI::App* bench = app.add_subcommand("bench", "reduction cost comparison");
  bench->add_option("--dims", dims, "comma list of ranks");
  bench->add_option("--trials", trials)->required();
  bench->add_option("--seed", seed);
  bench->add_option("--reducers", reducers, "comma list: lll, blll-L, kz, bkz");
  bench->add_option("--out", out_path)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (reduce->parsed())
      return cmd_reduce(algo, delta, routes, in_path, out_path, out_t_path, verify);
    if (svp->parsed()) return cmd_enum(true, in_path, "", radius, check);
    if (cvp->parsed()) return cmd_enum(false, in_path, target_path, radius, check);
    if (ifsim->parsed()) return cmd_if_sim(n, snr, trials, seed, reducers, out_path);
    if (bench->parsed()) return cmd_bench(dims, trials, seed, reducers, out_path);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const RadiusExhausted& e) {
    std::cerr << "error: no lattice point within radius " << e.radius << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}
