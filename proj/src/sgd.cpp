#include "widenet/sgd.hpp"

#include <algorithm>
#include <cmath>

#include "widenet/errors.hpp"
#include "widenet/parallel.hpp"

namespace widenet {

namespace {

double max_abs_c(const Params& p) {
  double m = 0.0;
  for (double c : p.c) m = std::max(m, std::abs(c));
  return m;
}

double mean_w_norm(const Params& p) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) {
    double s = 0.0;
    for (double v : p.w_row(i)) s += v * v;
    acc += std::sqrt(s);
  }
  return acc / static_cast<double>(p.n);
}

void check_state_finite(const Params& p, std::size_t step) {
  for (double c : p.c) {
    if (!std::isfinite(c)) {
      throw NumericalError("sgd: parameter overflow in C at step " + std::to_string(step));
    }
  }
  for (double w : p.w) {
    if (!std::isfinite(w)) {
      throw NumericalError("sgd: parameter overflow in W at step " + std::to_string(step));
    }
  }
}

}  // namespace

void validate(const SgdConfig& cfg) {
  if (!(cfg.alpha >= 0.0) || !std::isfinite(cfg.alpha)) {
    throw ConfigError("sgd config: alpha must be finite and >= 0");
  }
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
    throw ConfigError("sgd config: horizon T must be positive");
  }
  double prev = 0.0;
  for (double t : cfg.record_times) {
    if (!(t >= 0.0) || t > cfg.horizon) {
      throw ConfigError("sgd config: record times must lie in [0, T]");
    }
    if (t < prev) throw ConfigError("sgd config: record times must be sorted");
    prev = t;
  }
}

namespace {

// update with the pre-step g supplied, so callers that already computed the
// output do not pay for a second forward pass
void step_with_output(Params& p, const Activation& act, std::span<const double> x, double y,
                      double alpha_eff, double g) {
  const double scale = alpha_eff / std::sqrt(static_cast<double>(p.n)) * (y - g);
  double* w = p.w.data();
  for (std::size_t i = 0; i < p.n; ++i, w += p.d) {
    double z = 0.0;
    for (std::size_t j = 0; j < p.d; ++j) z += w[j] * x[j];
    const double c_pre = p.c[i];  // W update uses the pre-step C^i
    p.c[i] = c_pre + scale * act.eval(z);
    const double w_scale = scale * c_pre * act.d1(z);
    for (std::size_t j = 0; j < p.d; ++j) w[j] += w_scale * x[j];
  }
}

double gradient_identity_check(const Params& p, const Activation& act, std::span<const double> x,
                               double y, double alpha_eff, double h_fd) {
  if (!(h_fd >= 1e-7 && h_fd <= 1e-4)) {
    throw ConfigError("gradient_identity_check: h_fd must lie in [1e-7, 1e-4]");
  }
  Params updated = p;
  sgd_step(updated, act, x, y, alpha_eff);

  Params probe = p;
  const auto half_sq_loss = [&](const Params& q) {
    const double r = y - forward(q, act, x);
    return 0.5 * r * r;
  };
  const auto fd_grad = [&](double& slot) {
    const double saved = slot;
    slot = saved + h_fd;
    const double up = half_sq_loss(probe);
    slot = saved - h_fd;
    const double dn = half_sq_loss(probe);
    slot = saved;
    return (up - dn) / (2.0 * h_fd);
  };

  double worst = 0.0;
  const auto compare = [&](double applied, double grad) {
    const double expected = -alpha_eff * grad;
    const double dev = std::abs(applied - expected) / (std::abs(applied) + 1e-12);
    worst = std::max(worst, dev);
  };
  for (std::size_t i = 0; i < p.n; ++i) {
    compare(updated.c[i] - p.c[i], fd_grad(probe.c[i]));
  }
  for (std::size_t k = 0; k < p.n * p.d; ++k) {
    compare(updated.w[k] - p.w[k], fd_grad(probe.w[k]));
  }
  return worst;
}

TrainResult train(const Params& p0, const Activation& act, const Dataset& ds,
                  const SgdConfig& cfg) {
  validate(cfg);
  const auto n = static_cast<double>(p0.n);
  const std::size_t steps = static_cast<std::size_t>(std::floor(cfg.horizon * n));
  const double alpha_eff = cfg.alpha / n;

  // record step for each requested time: floor(N * t)
  std::vector<std::size_t> record_steps;
  record_steps.reserve(cfg.record_times.size());
  for (double t : cfg.record_times) {
    record_steps.push_back(static_cast<std::size_t>(std::floor(n * t)));
  }

  TrainResult out;
  out.params = p0;
  Trajectory& traj = out.trajectory;
  traj.step_count = steps;
  traj.c0_max = max_abs_c(p0);
  for (const auto& pt : ds.points()) traj.y_abs_max = std::max(traj.y_abs_max, std::abs(pt.y));

  double running_c_max = traj.c0_max;
  std::size_t next_record = 0;
  const auto record_if_due = [&](std::size_t step) {
    while (next_record < record_steps.size() && record_steps[next_record] == step) {
      check_state_finite(out.params, step);
      traj.times.push_back(cfg.record_times[next_record]);
      traj.h.push_back(forward_all(out.params, act, ds));
      traj.c_max.push_back(running_c_max);
      traj.w_mean_norm.push_back(mean_w_norm(out.params));
      ++next_record;
    }
  };

  Rng rng(cfg.seed);
  record_if_due(0);
  for (std::size_t k = 0; k < steps; ++k) {
    const DataPoint& pair = ds.sample_pair(rng);
    const double g = forward(out.params, act, pair.x);
    if (!std::isfinite(g)) {
      throw NumericalError("sgd: network output overflow at step " + std::to_string(k));
    }
    traj.g_abs_max = std::max(traj.g_abs_max, std::abs(g));
    sgd_step(out.params, act, pair.x, pair.y, alpha_eff);
    running_c_max = std::max(running_c_max, max_abs_c(out.params));
    if (!std::isfinite(running_c_max)) {
      throw NumericalError("sgd: parameter overflow at step " + std::to_string(k + 1));
    }
    record_if_due(k + 1);
  }
  check_state_finite(out.params, steps);
  return out;
}

double measure_pairing(const Params& p,
                       const std::function<double(double, std::span<const double>)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.n; ++i) acc += f(p.c[i], p.w_row(i));
  return acc / static_cast<double>(p.n);
}

MartingaleProbe martingale_variance_probe(const Activation& act, const Dataset& ds,
                                          const InitLaw& law, std::size_t n_units,
                                          const SgdConfig& cfg, std::size_t n_replicas,
                                          std::uint64_t master_seed, std::size_t workers) {
  validate(cfg);
  if (n_replicas < 30) throw ConfigError("martingale probe: n_replicas must be >= 30");

  const std::size_t m = ds.size();
  const auto n = static_cast<double>(n_units);
  const std::size_t steps = static_cast<std::size_t>(std::floor(cfg.horizon * n));
  const double alpha_eff = cfg.alpha / n;

  std::vector<Eigen::VectorXd> terminal(n_replicas);
  parallel_for(n_replicas, workers, [&](std::size_t r) {
    Rng init_rng(derive_seed(master_seed, "martingale.init", r));
    Rng data_rng(derive_seed(master_seed, "martingale.data", r));
    Params params = init(n_units, ds.dim(), law, init_rng);

    Eigen::VectorXd fluct = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    std::vector<Params> candidates(m);
    std::vector<Eigen::VectorXd> cand_h(m);
    for (std::size_t k = 0; k < steps; ++k) {
      const Eigen::VectorXd g = forward_all(params, act, ds);
      for (std::size_t j = 0; j < m; ++j) {
        candidates[j] = params;
        sgd_step(candidates[j], act, ds[j].x, ds[j].y, alpha_eff);
        cand_h[j] = forward_all(candidates[j], act, ds) - g;
      }
      Eigen::VectorXd mean = cand_h[0];
      for (std::size_t j = 1; j < m; ++j) mean += cand_h[j];
      mean /= static_cast<double>(m);

      const std::size_t pick = ds.sample_index(data_rng);
      fluct += cand_h[pick] - mean;
      params = std::move(candidates[pick]);
    }
    terminal[r] = fluct;
  });

  MartingaleProbe out;
  out.n_units = n_units;
  out.n_replicas = n_replicas;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (const auto& v : terminal) mean += v;
  mean /= static_cast<double>(n_replicas);
  Eigen::VectorXd var = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
  for (const auto& v : terminal) var += (v - mean).cwiseAbs2();
  var /= static_cast<double>(n_replicas - 1);
  out.component_variance = var;
  out.max_variance = var.maxCoeff();
  return out;
}

}  // namespace widenet
