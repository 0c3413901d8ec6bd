#include <doctest.h>

#include <cmath>

#include "widenet/analysis.hpp"
#include "widenet/errors.hpp"

using namespace widenet;

namespace {

Dataset small_ds() {
  return Dataset({{{0.5, -1.0}, 1.0}, {{1.2, 0.3}, -1.0}, {{-0.7, 0.8}, 0.5}, {{0.2, 1.5}, -0.5}});
}

SweepConfig tiny_sweep(std::uint64_t seed) {
  SweepConfig cfg;
  cfg.ns = {16, 32, 64};
  cfg.replicas = 10;
  cfg.alpha = 1.0;
  cfg.horizon = 0.5;
  cfg.grid_points = 6;
  cfg.kernel_n_mc = 20000;
  cfg.master_seed = seed;
  cfg.workers = 2;
  return cfg;
}

}  // namespace

TEST_CASE("stationarity catalog: names and the constant control") {
  const auto& catalog = stationarity_catalog();
  REQUIRE(catalog.size() == 6);
  CHECK(catalog[0].name == "one");
  CHECK(catalog[0].constant);
  for (std::size_t f = 1; f < catalog.size(); ++f) CHECK_FALSE(catalog[f].constant);
  const std::vector<double> w = {0.3, -1.0};
  CHECK(catalog[1].fn(2.0, w) == 2.0);
  CHECK(catalog[2].fn(-2.0, w) == 4.0);
  CHECK(catalog[3].fn(0.0, w) == std::tanh(0.3));
  CHECK(catalog[5].fn(0.0, w) == doctest::Approx(std::hypot(0.3, 1.0)));
}

TEST_CASE("coupled deviation: zero rate couples exactly") {
  Dataset ds = small_ds();
  const Activation t = make_activation("tanh");
  const InitLaw law = InitLaw::corollary();
  Rng krng(5);
  const auto kernel = estimate_A(law, t, ds, 0.0, 20000, krng);  // alpha = 0: zero matrix
  CHECK(kernel.a.cwiseAbs().maxCoeff() == 0.0);
  const std::vector<double> grid = {0.0, 0.25, 0.5};
  const double dev = coupled_deviation(64, 999, law, t, ds, 0.0, 0.5, grid, kernel.a);
  CHECK(dev == 0.0);
}

TEST_CASE("coupled deviation: deterministic in the replica seed") {
  Dataset ds = small_ds();
  const Activation t = make_activation("tanh");
  const InitLaw law = InitLaw::corollary();
  Rng krng(6);
  const auto kernel = estimate_A(law, t, ds, 1.0, 20000, krng);
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  const double a = coupled_deviation(64, 4321, law, t, ds, 1.0, 1.0, grid, kernel.a);
  const double b = coupled_deviation(64, 4321, law, t, ds, 1.0, 1.0, grid, kernel.a);
  CHECK(a == b);
  CHECK(a > 0.0);
}

TEST_CASE("convergence sweep: report shape and mass-conservation control") {
  Dataset ds = small_ds();
  const auto report =
      convergence_sweep(tiny_sweep(11), InitLaw::corollary(), make_activation("tanh"), ds);
  REQUIRE(report.ns.size() == 3);
  REQUIRE(report.mean_deviation.size() == 3);
  REQUIRE(report.replica_deviations[0].size() == 10);
  REQUIRE(report.mean_gaps.size() == 3);
  REQUIRE(report.mean_gaps[0].size() == stationarity_catalog().size());

  for (std::size_t n_idx = 0; n_idx < 3; ++n_idx) {
    CHECK(report.mean_gaps[n_idx][0] == 0.0);  // f = 1
    CHECK(report.mean_deviation[n_idx] > 0.0);
    CHECK(report.stderr_deviation[n_idx] > 0.0);
  }
  CHECK(report.slope_defined);
  CHECK(report.a.rows() == 4);
  CHECK(report.a_eigenvalues.size() == 4);
}

TEST_CASE("convergence sweep: degenerate zero-rate sweep has no slope") {
  Dataset ds = small_ds();
  auto cfg = tiny_sweep(12);
  cfg.alpha = 0.0;
  const auto report = convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds);
  for (double v : report.mean_deviation) CHECK(v == 0.0);
  CHECK_FALSE(report.slope_defined);
  for (std::size_t n_idx = 0; n_idx < 3; ++n_idx) {
    for (std::size_t f = 0; f < report.mean_gaps[n_idx].size(); ++f) {
      CHECK(report.mean_gaps[n_idx][f] == 0.0);
    }
  }
}

TEST_CASE("convergence sweep: independent of the worker count") {
  Dataset ds = small_ds();
  auto cfg = tiny_sweep(13);
  cfg.workers = 1;
  const auto serial = convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds);
  cfg.workers = 4;
  const auto parallel = convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds);
  CHECK(serial.a == parallel.a);
  CHECK(serial.mean_deviation == parallel.mean_deviation);
  CHECK(serial.mean_gaps == parallel.mean_gaps);
  CHECK(serial.slope == parallel.slope);
}

TEST_CASE("convergence sweep: validation") {
  Dataset ds = small_ds();
  auto cfg = tiny_sweep(14);
  cfg.ns = {16, 32};
  CHECK_THROWS_AS(convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds),
                  ConfigError);
  cfg = tiny_sweep(14);
  cfg.ns = {32, 16, 64};
  CHECK_THROWS_AS(convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds),
                  ConfigError);
  cfg = tiny_sweep(14);
  cfg.replicas = 5;
  CHECK_THROWS_AS(convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds),
                  ConfigError);
}

TEST_CASE("stationarity decay: same numbers as the combined sweep") {
  Dataset ds = small_ds();
  const auto cfg = tiny_sweep(15);
  const auto report = convergence_sweep(cfg, InitLaw::corollary(), make_activation("tanh"), ds);
  const auto gaps = stationarity_decay(cfg, InitLaw::corollary(), make_activation("tanh"), ds);
  CHECK(gaps == report.mean_gaps);
}

TEST_CASE("gaussianity test: quadrature path accepts a wide network") {
  Dataset ds({{{0.8}, 1.0}, {{-0.4}, 0.0}});
  const auto report = gaussianity_test(500, 300, InitLaw::uniform_c(1.0),
                                       make_activation("sigmoid"), ds, 0, 321, 2);
  CHECK(report.ks.p_value > 1e-4);
  CHECK(std::abs(report.standardized_mean) <= 4.0 / std::sqrt(300.0));
  CHECK(report.sigma_xx > 0.0);
}

TEST_CASE("gaussianity test: N = 1 with concentrated input is rejected") {
  // x = 0 makes g_0 = c * sigmoid(0) = c/2, a scaled uniform, never Gaussian.
  Dataset ds({{{0.0}, 1.0}});
  const auto report = gaussianity_test(1, 1000, InitLaw::uniform_c(1.0),
                                       make_activation("sigmoid"), ds, 0, 321, 2);
  CHECK(report.ks.p_value < 0.01);
  CHECK(report.sigma_xx == doctest::Approx(1.0 / 12.0).epsilon(1e-12));
}

TEST_CASE("gaussianity test: validation") {
  Dataset ds({{{0.5}, 1.0}});
  CHECK_THROWS_AS(
      gaussianity_test(10, 300, InitLaw::corollary(), make_activation("tanh"), ds, 0, 1),
      ConfigError);
  CHECK_THROWS_AS(
      gaussianity_test(10, 100, InitLaw::uniform_c(1.0), make_activation("tanh"), ds, 0, 1),
      ConfigError);
  CHECK_THROWS_AS(
      gaussianity_test(10, 300, InitLaw::uniform_c(1.0), make_activation("tanh"), ds, 5, 1),
      ConfigError);
}

TEST_CASE("gaussianity test: deterministic and worker-independent") {
  Dataset ds({{{0.8}, 1.0}});
  const auto a = gaussianity_test(200, 250, InitLaw::uniform_c(1.0), make_activation("tanh"),
                                  ds, 0, 9, 1);
  const auto b = gaussianity_test(200, 250, InitLaw::uniform_c(1.0), make_activation("tanh"),
                                  ds, 0, 9, 3);
  CHECK(a.ks.statistic == b.ks.statistic);
  CHECK(a.ks.p_value == b.ks.p_value);
  CHECK(a.standardized_mean == b.standardized_mean);
}
