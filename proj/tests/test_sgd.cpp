#include <doctest.h>

#include <cmath>
#include <vector>

#include "widenet/errors.hpp"
#include "widenet/sgd.hpp"

using namespace widenet;

namespace {

// Naive reimplementation of the update rule, written independently of
// sgd_step: plain loops over the displayed formulas.
void naive_step(std::vector<double>& c, std::vector<double>& w, std::size_t n, std::size_t d,
                const Activation& act, const std::vector<double>& x, double y, double alpha_eff) {
  double g = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += w[i * d + j] * x[j];
    g += c[i] * act.eval(z);
  }
  g /= std::sqrt(static_cast<double>(n));
  const std::vector<double> c_pre = c;
  for (std::size_t i = 0; i < n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < d; ++j) z += w[i * d + j] * x[j];
    c[i] = c_pre[i] + alpha_eff / std::sqrt(static_cast<double>(n)) * (y - g) * act.eval(z);
    for (std::size_t j = 0; j < d; ++j) {
      w[i * d + j] += alpha_eff / std::sqrt(static_cast<double>(n)) * (y - g) * c_pre[i] *
                      act.d1(z) * x[j];
    }
  }
}

Dataset two_points() { return Dataset({{{0.6, -0.2}, 1.0}, {{-0.4, 0.9}, -0.5}}); }

}  // namespace

TEST_CASE("sgd_step: zero C leaves W unchanged and moves C by the read-off amount") {
  const Activation t = make_activation("tanh");
  Rng rng(4);
  Params p = init(5, 2, InitLaw::corollary(), rng);
  const Params before = p;
  const std::vector<double> x = {0.7, -0.1};
  const double y = 2.0;
  const double alpha_eff = 0.25;

  sgd_step(p, t, x, y, alpha_eff);
  CHECK(p.w == before.w);
  const double scale = alpha_eff / std::sqrt(5.0) * y;  // g = 0 since C = 0
  for (std::size_t i = 0; i < p.n; ++i) {
    double z = 0.0;
    for (std::size_t j = 0; j < p.d; ++j) z += before.w[i * p.d + j] * x[j];
    CHECK(p.c[i] == scale * std::tanh(z));
  }
}

TEST_CASE("sgd_step: zero rate is a no-op") {
  const Activation s = make_activation("sigmoid");
  Rng rng(6);
  Params p = init(4, 3, InitLaw::uniform_c(1.0), rng);
  const Params before = p;
  sgd_step(p, s, std::vector<double>{1.0, 2.0, 3.0}, -1.0, 0.0);
  CHECK(p.c == before.c);
  CHECK(p.w == before.w);
}

TEST_CASE("sgd_step: zero residual applies the zero update") {
  const Activation t = make_activation("tanh");
  Rng rng(8);
  Params p = init(6, 2, InitLaw::uniform_c(1.0), rng);
  const std::vector<double> x = {0.4, 0.4};
  const double y = forward(p, t, x);
  const Params before = p;
  sgd_step(p, t, x, y, 0.5);
  CHECK(p.c == before.c);
  CHECK(p.w == before.w);
}

TEST_CASE("sgd_step: five steps match the naive oracle bit for bit") {
  for (const auto& name : activation_names()) {
    const Activation act = make_activation(name);
    Rng rng(12);
    Params p = init(3, 2, InitLaw::uniform_c(1.0), rng);
    std::vector<double> c = p.c, w = p.w;

    Rng data(77);
    for (int step = 0; step < 5; ++step) {
      const std::vector<double> x = {data.uniform(-1, 1), data.uniform(-1, 1)};
      const double y = data.uniform(-2, 2);
      sgd_step(p, act, x, y, 0.125);
      naive_step(c, w, 3, 2, act, x, y, 0.125);
    }
    CHECK(p.c == c);
    CHECK(p.w == w);
  }
}

TEST_CASE("gradient identity: update equals one explicit gradient step") {
  Rng rng(21);
  for (const auto& name : activation_names()) {
    const Activation act = make_activation(name);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform() * 8.0);
      const std::size_t d = 1 + static_cast<std::size_t>(rng.uniform() * 3.0);
      Params p = init(n, d, InitLaw::uniform_c(1.0), rng);
      std::vector<double> x(d);
      for (auto& v : x) v = rng.uniform(-1, 1);
      const double y = rng.uniform(-2, 2);
      const double alpha_eff = rng.uniform(0.1, 2.0) / static_cast<double>(n);
      CHECK(gradient_identity_check(p, act, x, y, alpha_eff, 1e-5) <= 1e-5);
    }
  }
}

TEST_CASE("gradient identity: flat state is exactly zero") {
  // C = 0 and y = 0: every applied update and every difference quotient
  // vanishes identically, including the whole W block.
  const Activation t = make_activation("tanh");
  Rng rng(31);
  Params p = init(4, 2, InitLaw::corollary(), rng);
  CHECK(gradient_identity_check(p, t, std::vector<double>{0.3, -0.8}, 0.0, 0.25, 1e-5) == 0.0);
}

TEST_CASE("gradient identity: h_fd range enforced") {
  Params p{{1.0}, {1.0}, 1, 1};
  CHECK_THROWS_AS(
      gradient_identity_check(p, make_activation("tanh"), std::vector<double>{1.0}, 0.0, 0.1, 1e-2),
      ConfigError);
}

TEST_CASE("train: zero rate gives a constant trajectory") {
  const Activation t = make_activation("tanh");
  Rng rng(41);
  const Params p0 = init(20, 2, InitLaw::uniform_c(1.0), rng);
  Dataset ds = two_points();

  SgdConfig cfg;
  cfg.alpha = 0.0;
  cfg.horizon = 1.0;
  cfg.record_times = {0.0, 0.25, 0.5, 1.0};
  cfg.seed = 5;
  const TrainResult run = train(p0, t, ds, cfg);

  const Eigen::VectorXd h0 = forward_all(p0, t, ds);
  CHECK(run.trajectory.step_count == 20);
  for (const auto& h : run.trajectory.h) CHECK(h == h0);
}

TEST_CASE("train: zero steps records only the initial state") {
  const Activation t = make_activation("tanh");
  Rng rng(43);
  const Params p0 = init(10, 1, InitLaw::uniform_c(1.0), rng);
  Dataset ds({{{1.0}, 1.0}});

  SgdConfig cfg;
  cfg.alpha = 1.0;
  cfg.horizon = 0.09;  // floor(N T) = 0
  cfg.record_times = {0.0, 0.09};
  cfg.seed = 5;
  const TrainResult run = train(p0, t, ds, cfg);
  CHECK(run.trajectory.step_count == 0);
  REQUIRE(run.trajectory.h.size() == 2);
  CHECK(run.trajectory.h[0] == run.trajectory.h[1]);
  CHECK(run.params.c == p0.c);
}

TEST_CASE("train: matches a naive training loop bit for bit") {
  const Activation act = make_activation("sigmoid");
  Rng rng(47);
  const Params p0 = init(3, 2, InitLaw::uniform_c(1.0), rng);
  Dataset ds = two_points();

  SgdConfig cfg;
  cfg.alpha = 1.5;
  cfg.horizon = 1.0;
  cfg.seed = 99;
  const TrainResult run = train(p0, act, ds, cfg);

  // oracle loop: same stream discipline (one uniform per step), naive update
  std::vector<double> c = p0.c, w = p0.w;
  Rng data(99);
  for (std::size_t k = 0; k < 3; ++k) {
    const double u = data.uniform();
    const auto idx = std::min(static_cast<std::size_t>(u * 2.0), std::size_t{1});
    naive_step(c, w, 3, 2, act, ds[idx].x, ds[idx].y, 1.5 / 3.0);
  }
  CHECK(run.params.c == c);
  CHECK(run.params.w == w);
}

TEST_CASE("train: determinism across reruns") {
  const Activation t = make_activation("tanh");
  Rng rng(53);
  const Params p0 = init(50, 2, InitLaw::uniform_c(1.0), rng);
  Dataset ds = two_points();

  SgdConfig cfg;
  cfg.alpha = 1.0;
  cfg.horizon = 2.0;
  cfg.record_times = {0.0, 1.0, 2.0};
  cfg.seed = 7;
  const TrainResult a = train(p0, t, ds, cfg);
  const TrainResult b = train(p0, t, ds, cfg);
  CHECK(a.params.c == b.params.c);
  CHECK(a.params.w == b.params.w);
  for (std::size_t j = 0; j < a.trajectory.h.size(); ++j) {
    CHECK(a.trajectory.h[j] == b.trajectory.h[j]);
  }
}

TEST_CASE("train: c_max monitor stays below the telescoped bound") {
  Dataset ds = two_points();
  for (const auto& name : activation_names()) {
    const Activation act = make_activation(name);
    Rng rng(59);
    const Params p0 = init(200, 2, InitLaw::uniform_c(1.0), rng);
    SgdConfig cfg;
    cfg.alpha = 2.0;
    cfg.horizon = 1.0;
    cfg.record_times = {1.0};
    cfg.seed = 3;
    const TrainResult run = train(p0, act, ds, cfg);
    const auto& traj = run.trajectory;
    REQUIRE(traj.c_max.size() == 1);
    const double bound = traj.c0_max + cfg.alpha * cfg.horizon * act.eval_bound *
                                           (traj.y_abs_max + traj.g_abs_max);
    CHECK(std::isfinite(traj.c_max.back()));
    CHECK(traj.c_max.back() <= bound);
    CHECK(traj.c_max.back() >= traj.c0_max);
  }
}

TEST_CASE("train: parameter overflow aborts with the step index") {
  const Activation t = make_activation("tanh");
  Rng rng(61);
  const Params p0 = init(4, 1, InitLaw::uniform_c(1.0), rng);
  Dataset ds({{{1.0}, 1.0}});
  SgdConfig cfg;
  cfg.alpha = 1e200;
  cfg.horizon = 2.0;
  cfg.seed = 3;
  CHECK_THROWS_WITH_AS(train(p0, t, ds, cfg), doctest::Contains("step"), NumericalError);
}

TEST_CASE("train: config validation") {
  SgdConfig cfg;
  cfg.alpha = -1.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.alpha = 1.0;
  cfg.horizon = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.horizon = 1.0;
  cfg.record_times = {0.5, 0.25};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg.record_times = {0.5, 1.5};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("measure_pairing: probability measure and moments") {
  Rng rng(67);
  const Params p = init(10000, 2, InitLaw::uniform_c(1.0), rng);
  CHECK(measure_pairing(p, [](double, std::span<const double>) { return 1.0; }) == 1.0);

  const Params pm = init(100, 2, InitLaw::corollary(), rng);
  CHECK(measure_pairing(pm, [](double c, std::span<const double>) { return c; }) == 0.0);

  // E[c^2] = 1/3 for uniform(-1,1); 4 standard errors of the MC mean
  const double second = measure_pairing(p, [](double c, std::span<const double>) { return c * c; });
  const double se = std::sqrt((1.0 / 5.0 - 1.0 / 9.0) / 10000.0);
  CHECK(std::abs(second - 1.0 / 3.0) <= 4.0 * se);
}

TEST_CASE("martingale probe: single-point dataset has zero fluctuation") {
  Dataset ds({{{0.8}, 1.0}});
  SgdConfig cfg;
  cfg.alpha = 1.0;
  cfg.horizon = 1.0;
  const auto probe = martingale_variance_probe(make_activation("tanh"), ds,
                                               InitLaw::uniform_c(1.0), 64, cfg, 30, 17, 2);
  CHECK(probe.max_variance < 1e-20);
}

TEST_CASE("martingale probe: zero rate has zero fluctuation") {
  Dataset ds = two_points();
  SgdConfig cfg;
  cfg.alpha = 0.0;
  cfg.horizon = 1.0;
  const auto probe = martingale_variance_probe(make_activation("sigmoid"), ds,
                                               InitLaw::uniform_c(1.0), 32, cfg, 30, 17);
  CHECK(probe.max_variance == 0.0);
}

TEST_CASE("martingale probe: replica floor enforced") {
  Dataset ds = two_points();
  SgdConfig cfg;
  CHECK_THROWS_AS(martingale_variance_probe(make_activation("tanh"), ds, InitLaw::corollary(), 16,
                                            cfg, 10, 1),
                  ConfigError);
}
