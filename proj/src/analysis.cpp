#include "widenet/analysis.hpp"

#include <cmath>

#include "widenet/errors.hpp"
#include "widenet/limit_ode.hpp"
#include "widenet/parallel.hpp"
#include "widenet/sgd.hpp"

namespace widenet {

const std::vector<TestFunction>& stationarity_catalog() {
  static const std::vector<TestFunction> catalog = {
      {"one", [](double, std::span<const double>) { return 1.0; }, true},
      {"c", [](double c, std::span<const double>) { return c; }, false},
      {"c_sq", [](double c, std::span<const double>) { return c * c; }, false},
      {"tanh_w1", [](double, std::span<const double> w) { return std::tanh(w[0]); }, false},
      {"c_tanh_w1", [](double c, std::span<const double> w) { return c * std::tanh(w[0]); },
       false},
      {"w_norm_cap10",
       [](double, std::span<const double> w) {
         double s = 0.0;
         for (double v : w) s += v * v;
         return std::min(std::sqrt(s), 10.0);
       },
       false},
  };
  return catalog;
}

ReplicaOutcome run_coupled_replica(std::size_t n_units, std::uint64_t replica_seed,
                                   const InitLaw& law, const Activation& act, const Dataset& ds,
                                   double alpha, double horizon, std::span<const double> grid,
                                   const Eigen::MatrixXd& a) {
  const auto& catalog = stationarity_catalog();

  Rng init_rng(derive_seed(replica_seed, "replica.init"));
  const Params p0 = init(n_units, ds.dim(), law, init_rng);

  std::vector<double> mu0(catalog.size());
  for (std::size_t f = 0; f < catalog.size(); ++f) mu0[f] = measure_pairing(p0, catalog[f].fn);

  SgdConfig cfg;
  cfg.alpha = alpha;
  cfg.horizon = horizon;
  cfg.record_times.assign(grid.begin(), grid.end());
  cfg.seed = derive_seed(replica_seed, "replica.data");
  const TrainResult run = train(p0, act, ds, cfg);

  const Eigen::VectorXd h0 = forward_all(p0, act, ds);
  const OdeSolution sol(a, ds.targets(), h0);

  ReplicaOutcome out;
  for (std::size_t j = 0; j < run.trajectory.times.size(); ++j) {
    const Eigen::VectorXd limit = sol.eval(run.trajectory.times[j]);
    out.deviation =
        std::max(out.deviation, (run.trajectory.h[j] - limit).cwiseAbs().maxCoeff());
  }
  out.gaps.resize(catalog.size());
  for (std::size_t f = 0; f < catalog.size(); ++f) {
    out.gaps[f] = std::abs(measure_pairing(run.params, catalog[f].fn) - mu0[f]);
  }
  return out;
}

double coupled_deviation(std::size_t n_units, std::uint64_t replica_seed, const InitLaw& law,
                         const Activation& act, const Dataset& ds, double alpha, double horizon,
                         std::span<const double> grid, const Eigen::MatrixXd& a) {
  return run_coupled_replica(n_units, replica_seed, law, act, ds, alpha, horizon, grid, a)
      .deviation;
}

namespace {

void validate(const SweepConfig& cfg) {
  if (cfg.ns.size() < 3) throw ConfigError("sweep: at least 3 N values are required");
  for (std::size_t i = 1; i < cfg.ns.size(); ++i) {
    if (cfg.ns[i] <= cfg.ns[i - 1]) throw ConfigError("sweep: Ns must be strictly increasing");
  }
  if (cfg.replicas < 10) throw ConfigError("sweep: at least 10 replicas per N are required");
  if (cfg.grid_points < 2) throw ConfigError("sweep: grid needs at least 2 points");
  if (!(cfg.alpha >= 0.0)) throw ConfigError("sweep: alpha must be >= 0");
  if (!(cfg.horizon > 0.0)) throw ConfigError("sweep: horizon must be positive");
}

}  // namespace

SweepReport convergence_sweep(const SweepConfig& cfg, const InitLaw& law, const Activation& act,
                              const Dataset& ds) {
  validate(cfg);
  const auto& catalog = stationarity_catalog();

  SweepReport report;
  report.ns = cfg.ns;
  for (const auto& f : catalog) {
    report.f_names.push_back(f.name);
    report.f_constant.push_back(f.constant);
  }

  // One kernel estimate serves every N.
  Rng kernel_rng(derive_seed(cfg.master_seed, "sweep.kernel"));
  const KernelMatrix kernel =
      estimate_A(law, act, ds, cfg.alpha, cfg.kernel_n_mc, kernel_rng, cfg.workers);
  report.a = kernel.a;
  report.a_stderr = kernel.stderr_;
  report.a_eigenvalues = check_pd(kernel).eigenvalues;

  std::vector<double> grid(cfg.grid_points);
  for (std::size_t j = 0; j < cfg.grid_points; ++j) {
    grid[j] = cfg.horizon * static_cast<double>(j) / static_cast<double>(cfg.grid_points - 1);
  }

  const std::size_t total = cfg.ns.size() * cfg.replicas;
  std::vector<ReplicaOutcome> outcomes(total);
  parallel_for(total, cfg.workers, [&](std::size_t task) {
    const std::size_t n_idx = task / cfg.replicas;
    const std::size_t r = task % cfg.replicas;
    const std::uint64_t seed = derive_seed(cfg.master_seed, "sweep.replica", task);
    outcomes[task] =
        run_coupled_replica(cfg.ns[n_idx], seed, law, act, ds, cfg.alpha, cfg.horizon, grid,
                            report.a);
    (void)r;
  });

  const auto reps = static_cast<double>(cfg.replicas);
  for (std::size_t n_idx = 0; n_idx < cfg.ns.size(); ++n_idx) {
    std::vector<double> devs(cfg.replicas);
    std::vector<double> gap_sum(catalog.size(), 0.0);
    double mean = 0.0;
    for (std::size_t r = 0; r < cfg.replicas; ++r) {
      const auto& o = outcomes[n_idx * cfg.replicas + r];
      devs[r] = o.deviation;
      mean += o.deviation;
      for (std::size_t f = 0; f < catalog.size(); ++f) gap_sum[f] += o.gaps[f];
    }
    mean /= reps;
    double var = 0.0;
    for (double v : devs) var += (v - mean) * (v - mean);
    var = cfg.replicas > 1 ? var / (reps - 1.0) : 0.0;
    report.replica_deviations.push_back(std::move(devs));
    report.mean_deviation.push_back(mean);
    report.stderr_deviation.push_back(std::sqrt(var / reps));
    std::vector<double> gaps(catalog.size());
    for (std::size_t f = 0; f < catalog.size(); ++f) gaps[f] = gap_sum[f] / reps;
    report.mean_gaps.push_back(std::move(gaps));
  }

  // log-log slope; undefined when any mean deviation is zero (degenerate
  // sweeps such as alpha = 0)
  report.slope_defined = true;
  for (double v : report.mean_deviation) {
    if (!(v > 0.0)) report.slope_defined = false;
  }
  if (report.slope_defined) {
    const auto k = static_cast<double>(cfg.ns.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
      const double lx = std::log(static_cast<double>(cfg.ns[i]));
      const double ly = std::log(report.mean_deviation[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    report.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return report;
}

std::vector<std::vector<double>> stationarity_decay(const SweepConfig& cfg, const InitLaw& law,
                                                    const Activation& act, const Dataset& ds) {
  return convergence_sweep(cfg, law, act, ds).mean_gaps;
}

GaussTestReport gaussianity_test(std::size_t n_units, std::size_t n_seeds, const InitLaw& law,
                                 const Activation& act, const Dataset& ds, std::size_t x_index,
                                 std::uint64_t master_seed, std::size_t workers) {
  if (law.c_degenerate()) {
    throw ConfigError("gaussianity_test: the point-mass c law gives the constant 0, not a "
                      "testable Gaussian; use a uniform c law");
  }
  if (n_seeds < 200) throw ConfigError("gaussianity_test: n_seeds must be >= 200");
  if (x_index >= ds.size()) throw ConfigError("gaussianity_test: x_index out of range");

  // Sigma_xx by quadrature when d = 1 (trusted oracle), Monte Carlo otherwise.
  double sigma_xx = 0.0;
  if (ds.dim() == 1) {
    // With a single point and alpha = 1 the kernel reduces to E[sigma(wx)^2];
    // the point-mass law drops the derivative term, E[c^2] multiplies after.
    const std::vector<std::vector<double>> x_only = {ds[x_index].x};
    sigma_xx = law.c_second_moment() *
               quadrature_A_1d(InitLaw::corollary(), act, x_only, 1.0, 128)(0, 0);
  } else {
    Rng rng(derive_seed(master_seed, "gauss.sigma"));
    sigma_xx = init_output_covariance(law, act, ds, 1000000, rng, workers)
                   .sigma(static_cast<Eigen::Index>(x_index), static_cast<Eigen::Index>(x_index));
  }
  if (!(sigma_xx > 0.0)) {
    throw ConfigError("gaussianity_test: Sigma_xx is not positive (degenerate output at this x)");
  }

  std::vector<double> standardized(n_seeds);
  const double scale = 1.0 / std::sqrt(sigma_xx);
  parallel_for(n_seeds, workers, [&](std::size_t s) {
    Rng rng(derive_seed(master_seed, "gauss.replica", s));
    const Params p = init(n_units, ds.dim(), law, rng);
    standardized[s] = scale * forward(p, act, ds[x_index].x);
  });

  GaussTestReport out;
  out.n_units = n_units;
  out.n_seeds = n_seeds;
  out.x_index = x_index;
  out.sigma_xx = sigma_xx;
  double mean = 0.0;
  for (double v : standardized) mean += v;
  out.standardized_mean = mean / static_cast<double>(n_seeds);
  out.ks = ks_test_standard_normal(std::move(standardized));
  return out;
}

}  // namespace widenet
