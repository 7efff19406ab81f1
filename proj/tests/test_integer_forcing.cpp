#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <sstream>

#include "doctest.h"
#include "latred/integer_forcing.hpp"
#include "latred/rng.hpp"

using namespace latred;

namespace {

IfInstance random_instance(std::size_t n, std::uint64_t seed, double p) {
  return IfInstance(sample_channel(n, seed, 0), p);
}

}  // namespace

TEST_CASE("instance validation") {
  CHECK_THROWS_AS(IfInstance(Matrix(2, 3), 1.0), DimensionMismatch);
  CHECK_THROWS_AS(IfInstance(Matrix::identity(2), 0.0), Error);
  CHECK_THROWS_AS(IfInstance(Matrix::identity(2), -3.0), Error);
}

TEST_CASE("reducer name parsing round trips") {
  CHECK(ReducerSpec::parse("lll").name() == "lll");
  CHECK(ReducerSpec::parse("kz").name() == "kz");
  CHECK(ReducerSpec::parse("bkz").name() == "bkz");
  CHECK(ReducerSpec::parse("boosted-kz").name() == "bkz");
  CHECK(ReducerSpec::parse("blll-3").name() == "blll-3");
  CHECK(ReducerSpec::parse("boosted-lll-9").name() == "blll-9");
  CHECK(ReducerSpec::parse("blll-9").routes == 9);
  CHECK_THROWS_AS(ReducerSpec::parse("minkowski"), ParseError);
  CHECK_THROWS_AS(ReducerSpec::parse("blll-0"), ParseError);
  CHECK_THROWS_AS(ReducerSpec::parse("blll-x"), ParseError);
}

TEST_CASE("effective basis gram identity") {
  // H = I2, P = 1: D^T D = (I + I)^{-1} = I/2
  const LatticeBasis d = effective_basis(IfInstance(Matrix::identity(2), 1.0));
  const Matrix gram = d.matrix().transpose() * d.matrix();
  CHECK((gram - Matrix::identity(2).scaled(0.5)).max_abs() < 1e-10);
}

TEST_CASE("effective basis of a zero channel is the pure regularizer") {
  const LatticeBasis d = effective_basis(IfInstance(Matrix(2, 2, {0, 0, 0, 0}), 4.0));
  const Matrix gram = d.matrix().transpose() * d.matrix();
  CHECK((gram - Matrix::identity(2).scaled(4.0)).max_abs() < 1e-8);
}

TEST_CASE("effective basis approaches the inverse gram at high SNR") {
  const Matrix h(2, 2, {2, 1, 0, 1});
  const LatticeBasis d = effective_basis(IfInstance(h, 1e10));
  const Matrix gram = d.matrix().transpose() * d.matrix();
  const Matrix hth = h.transpose() * h;
  CHECK((gram * hth - Matrix::identity(2)).max_abs() < 1e-6);
}

TEST_CASE("effective gram matches the regularized inverse on seeded instances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const IfInstance inst = random_instance(5, 100 + seed, 10.0);
    const LatticeBasis d = effective_basis(inst);
    Matrix m = inst.h.transpose() * inst.h;
    for (std::size_t i = 0; i < 5; ++i) m(i, i) += 1.0 / inst.p;
    const Matrix gram = d.matrix().transpose() * d.matrix();
    CHECK((gram * m - Matrix::identity(5)).max_abs() <= 1e-8 * 5 * std::max(1.0, m.max_abs()));
  }
}

TEST_CASE("coefficients from an already-reduced scaled identity") {
  const LatticeBasis d(Matrix::identity(3).scaled(0.6));
  for (const char* name : {"lll", "blll-3", "kz", "bkz"}) {
    const UnimodularMatrix a = if_coefficients(d, ReducerSpec::parse(name));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(a(i, j) == (i == j ? 1 : 0));
  }
}

TEST_CASE("identity channel at unit SNR: analytic rate chain") {
  const IfInstance inst(Matrix::identity(2), 1.0);
  const UnimodularMatrix a =
      if_coefficients(effective_basis(inst), ReducerSpec::parse("bkz"));
  // D is a scaled identity: max_i ||D a_i||^2 = 1/2
  const LatticeBasis d = effective_basis(inst);
  double worst = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    Vector da(2, 0.0);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c) da[r] += d.matrix()(r, c) * static_cast<double>(a(i, c));
    worst = std::max(worst, norm_sq(da));
  }
  CHECK(worst == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(computation_rate(inst, {1, 0}) == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("computation rate clamps and grows with SNR") {
  // zero channel, a = (1,1): ||Da||^2 = 2P > P, so the rate clamps at zero
  const IfInstance weak(Matrix(2, 2, {0, 0, 0, 0}), 0.5);
  CHECK(computation_rate(weak, {1, 1}) == 0.0);
  double prev = 0.0;
  for (double p = 1.0; p <= 1e4; p *= 2.0) {
    const double r = computation_rate(IfInstance(Matrix::identity(2), p), {1, 0});
    CHECK(r >= prev);
    prev = r;
  }
  CHECK_THROWS_AS(computation_rate(weak, {0, 0}), ZeroVector);
}

TEST_CASE("optimal projection analytic cases") {
  const Matrix b = optimal_projection(IfInstance(Matrix::identity(2), 1.0), UnimodularMatrix(2));
  CHECK(b(0, 0) == doctest::Approx(0.5).epsilon(1e-10));  // (2I)^{-1} e1
  CHECK(b(0, 1) == doctest::Approx(0.0).epsilon(1e-10));

  const Matrix bz = optimal_projection(IfInstance(Matrix(2, 2, {0, 0, 0, 0}), 2.0),
                                       UnimodularMatrix(2));
  CHECK(bz.max_abs() < 1e-12);
}

TEST_CASE("the two rate forms agree with the optimal projection") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const IfInstance inst = random_instance(4, 500 + seed, 25.0);
    const RateReport rep = analyze_instance(inst, ReducerSpec::parse("blll-3"));
    const LatticeBasis d = effective_basis(inst);
    for (std::size_t i = 0; i < 4; ++i) {
      Vector a_i(4), b_i(4), da(4, 0.0), htb(4, 0.0);
      for (std::size_t c = 0; c < 4; ++c) {
        a_i[c] = static_cast<double>(rep.a(i, c));
        b_i[c] = rep.b(i, c);
      }
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
          da[r] += d.matrix()(r, c) * a_i[c];
          htb[r] += inst.h(c, r) * b_i[c];
        }
      double mismatch = 0.0;
      for (std::size_t r = 0; r < 4; ++r)
        mismatch += (htb[r] - a_i[r]) * (htb[r] - a_i[r]);
      // with the optimal projection, the effective noise ||b||^2 + P||H^T b - a||^2
      // collapses to ||D a||^2
      const double denom = norm_sq(b_i) + inst.p * mismatch;
      CHECK(denom == doctest::Approx(norm_sq(da)).epsilon(1e-8));
    }
  }
}

TEST_CASE("projection stationarity by finite differences") {
  const IfInstance inst = random_instance(3, 42, 10.0);
  const RateReport rep = analyze_instance(inst, ReducerSpec::parse("lll"));
  // perturbing any entry of b_i must not decrease the effective noise
  for (std::size_t i = 0; i < 3; ++i) {
    Vector a_i(3), b_i(3);
    for (std::size_t c = 0; c < 3; ++c) {
      a_i[c] = static_cast<double>(rep.a(i, c));
      b_i[c] = rep.b(i, c);
    }
    auto noise = [&](const Vector& b) {
      Vector htb(3, 0.0);
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) htb[r] += inst.h(c, r) * b[c];
      double mismatch = 0.0;
      for (std::size_t r = 0; r < 3; ++r)
        mismatch += (htb[r] - a_i[r]) * (htb[r] - a_i[r]);
      return norm_sq(b) + inst.p * mismatch;
    };
    const double base = noise(b_i);
    for (std::size_t c = 0; c < 3; ++c) {
      for (double eps : {1e-5, -1e-5}) {
        Vector pert = b_i;
        pert[c] += eps;
        CHECK(noise(pert) >= base - 1e-6);
      }
    }
  }
}

TEST_CASE("report invariants on seeded instances") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const IfInstance inst = random_instance(4, 900 + seed, 100.0);
    const RateReport rep = analyze_instance(inst, ReducerSpec::parse("blll-1"));
    CHECK(rep.a.determinant() * rep.a.determinant() == 1);
    double lo = rep.per_stream_rates[0];
    for (double r : rep.per_stream_rates) {
      CHECK(r >= 0.0);
      lo = std::min(lo, r);
    }
    CHECK(rep.min_rate == doctest::Approx(lo));
  }
}

TEST_CASE("boosted KZ coefficient quality versus classic on seeded instances") {
  std::size_t wins = 0, trials = 60;
  for (std::uint64_t seed = 1; seed <= trials; ++seed) {
    const IfInstance inst(sample_channel(6, 1234, seed), 100.0);
    const LatticeBasis d = effective_basis(inst);
    auto worst = [&](const char* name) {
      const UnimodularMatrix a = if_coefficients(d, ReducerSpec::parse(name));
      double w = 0.0;
      for (std::size_t i = 0; i < 6; ++i) {
        Vector da(6, 0.0);
        for (std::size_t r = 0; r < 6; ++r)
          for (std::size_t c = 0; c < 6; ++c)
            da[r] += d.matrix()(r, c) * static_cast<double>(a(i, c));
        w = std::max(w, norm_sq(da));
      }
      return w;
    };
    if (worst("bkz") <= worst("kz") + 1e-12) ++wins;
  }
  CHECK(wins * 100 >= trials * 95);
}

TEST_CASE("sweep is deterministic and bounded by capacity") {
  SweepConfig cfg;
  cfg.n = 4;
  cfg.snr_db_grid = {10.0, 20.0};
  cfg.trials = 8;
  cfg.seed = 7;
  cfg.reducers = {ReducerSpec::parse("lll"), ReducerSpec::parse("blll-3"),
                  ReducerSpec::parse("bkz")};
  const std::vector<SweepRow> rows1 = ergodic_rate_sweep(cfg);
  const std::vector<SweepRow> rows2 = ergodic_rate_sweep(cfg);
  REQUIRE(rows1.size() == 6);
  std::ostringstream csv1, csv2;
  write_sweep_csv(csv1, rows1);
  write_sweep_csv(csv2, rows2);
  CHECK(csv1.str() == csv2.str());
  CHECK(csv1.str().rfind("snr_db,reducer,ergodic_rate,capacity,mean_ln_od,mean_flops,"
                         "failed_trials\n", 0) == 0);
  for (const SweepRow& r : rows1) {
    CHECK(r.ergodic_rate <= r.capacity + 1e-9);
    CHECK(r.failed_trials == 0);
    CHECK(r.mean_ln_od >= -1e-9);
  }
}

TEST_CASE("reducer failures are counted, not dropped") {
  SweepConfig cfg;
  cfg.n = 13;  // beyond the default KZ rank cap
  cfg.snr_db_grid = {10.0};
  cfg.trials = 3;
  cfg.seed = 5;
  cfg.reducers = {ReducerSpec::parse("kz")};
  const std::vector<SweepRow> rows = ergodic_rate_sweep(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].failed_trials == 3);
}
