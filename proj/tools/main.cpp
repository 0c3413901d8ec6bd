// widenet: a numerical laboratory for Xavier-scaled single-layer networks.
//
// Subcommands drive the finite-N SGD simulator, the limit-kernel estimators,
// the limit-ODE solver and the statistical verification experiments, all from
// one master seed. Every output JSON embeds the resolved configuration;
// --workers and --out steer execution only and never change any number.

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "widenet/analysis.hpp"
#include "widenet/config.hpp"
#include "widenet/csv.hpp"
#include "widenet/errors.hpp"
#include "widenet/kernel.hpp"
#include "widenet/limit_ode.hpp"
#include "widenet/sgd.hpp"
#include "widenet/stats.hpp"

namespace {

using nlohmann::ordered_json;
using namespace widenet;

struct CliState {
  ExperimentConfig cfg;
  std::string ns_text = "250,1000,4000";
  std::string martingale_ns_text = "250,1000";
  std::string kernel_csv;  // ode only
};

void add_common_options(CLI::App* cmd, CliState& st, bool needs_dataset) {
  auto* dataset = cmd->add_option("--dataset", st.cfg.dataset_path,
                                  "training set CSV (header x_1,...,x_d,y)");
  if (needs_dataset) dataset->required();
  cmd->add_option("--activation", st.cfg.activation, "tanh or sigmoid")->capture_default_str();
  cmd->add_option("--c-law", st.cfg.c_law, "point_mass or uniform:<half_width>")
      ->capture_default_str();
  cmd->add_option("--alpha", st.cfg.alpha, "limit learning-rate constant")->capture_default_str();
  cmd->add_option("--T", st.cfg.horizon, "time horizon")->capture_default_str();
  cmd->add_option("--seed", st.cfg.seed, "master seed")->capture_default_str();
  cmd->add_option("--out", st.cfg.out_dir, "output directory")->capture_default_str();
  cmd->add_option("--workers", st.cfg.workers, "worker threads (wall clock only)")
      ->capture_default_str();
  cmd->set_config("--config", "", "key=value config file; command-line flags win");
}

std::filesystem::path prepare_out_dir(const ExperimentConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_json_atomic(const std::filesystem::path& path, const ordered_json& j) {
  write_text_atomic(path.string(), j.dump(2) + "\n");
}

std::vector<double> time_grid(double horizon, std::size_t points) {
  if (points < 2) throw ConfigError("grid needs at least 2 points");
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = horizon * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

ordered_json vector_json(const Eigen::VectorXd& v) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

// ---------------------------------------------------------------- simulate

int run_simulate(const CliState& st) {
  const auto& cfg = st.cfg;
  const Dataset ds = Dataset::from_csv(cfg.dataset_path);
  const Activation act = make_activation(cfg.activation);
  const InitLaw law = InitLaw::parse(cfg.c_law);
  const auto out_dir = prepare_out_dir(cfg);

  Rng init_rng(derive_seed(cfg.seed, "simulate.init"));
  const Params p0 = init(cfg.n_units, ds.dim(), law, init_rng);

  SgdConfig sgd;
  sgd.alpha = cfg.alpha;
  sgd.horizon = cfg.horizon;
  sgd.record_times = time_grid(cfg.horizon, cfg.grid_points);
  sgd.seed = derive_seed(cfg.seed, "simulate.data");
  const TrainResult run = train(p0, act, ds, sgd);
  const Trajectory& traj = run.trajectory;

  std::vector<std::string> header = {"t"};
  for (std::size_t i = 1; i <= ds.size(); ++i) header.push_back("h_" + std::to_string(i));
  header.push_back("c_max");
  std::vector<std::vector<double>> rows;
  for (std::size_t j = 0; j < traj.times.size(); ++j) {
    std::vector<double> row = {traj.times[j]};
    for (Eigen::Index i = 0; i < traj.h[j].size(); ++i) row.push_back(traj.h[j][i]);
    row.push_back(traj.c_max[j]);
    rows.push_back(std::move(row));
  }
  write_csv((out_dir / "trajectory.csv").string(), header, rows);

  const double c_bound =
      traj.c0_max + cfg.alpha * cfg.horizon * act.eval_bound * (traj.y_abs_max + traj.g_abs_max);
  ordered_json j;
  j["subcommand"] = "simulate";
  j["config"] = config_echo(cfg);
  j["step_count"] = traj.step_count;
  j["monitors"]["c0_max"] = traj.c0_max;
  j["monitors"]["c_max"] = traj.c_max.empty() ? traj.c0_max : traj.c_max.back();
  j["monitors"]["w_mean_norm"] = traj.w_mean_norm.empty() ? 0.0 : traj.w_mean_norm.back();
  j["monitors"]["g_abs_max"] = traj.g_abs_max;
  j["monitors"]["y_abs_max"] = traj.y_abs_max;
  j["monitors"]["c_max_bound"] = c_bound;
  j["monitors"]["c_max_within_bound"] =
      (traj.c_max.empty() ? traj.c0_max : traj.c_max.back()) <= c_bound;
  write_json_atomic(out_dir / "simulate.json", j);
  std::cout << "simulate: " << traj.times.size() << " records over " << traj.step_count
            << " steps -> " << (out_dir / "trajectory.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------------ kernel

int run_kernel(const CliState& st) {
  const auto& cfg = st.cfg;
  const Dataset ds = Dataset::from_csv(cfg.dataset_path);
  const Activation act = make_activation(cfg.activation);
  const InitLaw law = InitLaw::parse(cfg.c_law);
  const auto out_dir = prepare_out_dir(cfg);

  Rng rng(derive_seed(cfg.seed, "kernel.mc"));
  const KernelMatrix kernel = estimate_A(law, act, ds, cfg.alpha, cfg.n_mc, rng, cfg.workers);
  const PdReport pd = check_pd(kernel);

  std::vector<std::string> warnings;
  if (law.c_degenerate() && act.eval(0.0) == 0.0) {
    for (std::size_t i : zero_input_indices(ds.inputs())) {
      warnings.push_back("sample " + std::to_string(i) +
                         " is the zero vector: sigma(w.x) vanishes identically for an odd "
                         "activation and A is singular despite distinct samples");
    }
  }
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

  write_matrix_csv((out_dir / "kernel.csv").string(), kernel.a);
  ordered_json j;
  j["subcommand"] = "kernel";
  j["config"] = config_echo(cfg);
  j["alpha"] = kernel.alpha;
  j["n_mc"] = kernel.n_mc;
  j["lambda_min"] = pd.lambda_min;
  j["lambda_max"] = pd.lambda_max;
  j["max_stderr"] = kernel.stderr_.maxCoeff();
  j["pd_threshold"] = pd.threshold;
  j["positive_definite"] = pd.is_pd;
  j["eigenvalues"] = vector_json(pd.eigenvalues);
  j["warnings"] = warnings;
  write_json_atomic(out_dir / "kernel.json", j);
  std::cout << "kernel: lambda_min=" << pd.lambda_min << " lambda_max=" << pd.lambda_max
            << " positive_definite=" << (pd.is_pd ? "true" : "false") << "\n";
  return 0;
}

// --------------------------------------------------------------------- ode

int run_ode(const CliState& st) {
  const auto& cfg = st.cfg;
  const Dataset ds = Dataset::from_csv(cfg.dataset_path);
  const Activation act = make_activation(cfg.activation);
  const InitLaw law = InitLaw::parse(cfg.c_law);
  const auto out_dir = prepare_out_dir(cfg);

  Eigen::MatrixXd a;
  if (!st.kernel_csv.empty()) {
    a = read_matrix_csv(st.kernel_csv);
    if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != ds.size()) {
      throw ConfigError("ode: kernel CSV must be M x M for this dataset");
    }
    if (a != a.transpose().eval()) throw ConfigError("ode: kernel CSV must be symmetric");
  } else {
    Rng rng(derive_seed(cfg.seed, "kernel.mc"));
    a = estimate_A(law, act, ds, cfg.alpha, cfg.n_mc, rng, cfg.workers).a;
  }

  Rng sigma_rng(derive_seed(cfg.seed, "ode.sigma"));
  const CovEstimate cov = init_output_covariance(law, act, ds, cfg.n_mc, sigma_rng, cfg.workers);
  Rng h0_rng(derive_seed(cfg.seed, "ode.h0"));
  const Eigen::VectorXd h0 = sample_h0(cov.sigma, h0_rng);
  const Eigen::VectorXd y_hat = ds.targets();
  const OdeSolution sol = solve_spectral(a, y_hat, h0);

  std::vector<std::string> header = {"t"};
  for (std::size_t i = 1; i <= ds.size(); ++i) header.push_back("h_" + std::to_string(i));
  header.push_back("J");
  header.push_back("err_inf");
  std::vector<std::vector<double>> rows;
  for (double t : time_grid(cfg.horizon, cfg.grid_points)) {
    const Eigen::VectorXd h = sol.eval(t);
    std::vector<double> row = {t};
    for (Eigen::Index i = 0; i < h.size(); ++i) row.push_back(h[i]);
    row.push_back(objective_J(a, y_hat, h));
    row.push_back((h - y_hat).cwiseAbs().maxCoeff());
    rows.push_back(std::move(row));
  }
  write_csv((out_dir / "ode_path.csv").string(), header, rows);

  // independent cross-check over a bounded window
  const double t_rk = std::min(cfg.horizon, 10.0);
  const Rk4Path rk4 = solve_rk4(a, y_hat, h0, cfg.dt, t_rk);
  double sup_diff = 0.0;
  for (std::size_t k = 0; k < rk4.times.size(); ++k) {
    sup_diff = std::max(sup_diff, (rk4.states[k] - sol.eval(rk4.times[k])).cwiseAbs().maxCoeff());
  }

  ordered_json j;
  j["subcommand"] = "ode";
  j["config"] = config_echo(cfg);
  j["kernel_csv"] = st.kernel_csv;
  j["lambda_min"] = sol.eigenvalues().minCoeff();
  j["lambda_max"] = sol.eigenvalues().maxCoeff();
  j["h0"] = vector_json(h0);
  j["final_err_inf"] = sol.long_time_error(cfg.horizon);
  j["rk4"]["dt"] = cfg.dt;
  j["rk4"]["t_end"] = t_rk;
  j["rk4"]["sup_diff_vs_spectral"] = sup_diff;
  write_json_atomic(out_dir / "ode.json", j);
  std::cout << "ode: final ||h - y||_inf = " << sol.long_time_error(cfg.horizon)
            << ", rk4 cross-check sup diff = " << sup_diff << "\n";
  return 0;
}

// --------------------------------------------------------------- gauss-test

int run_gauss_test(const CliState& st) {
  const auto& cfg = st.cfg;
  const Dataset ds = Dataset::from_csv(cfg.dataset_path);
  const Activation act = make_activation(cfg.activation);
  const InitLaw law = InitLaw::parse(cfg.c_law);
  const auto out_dir = prepare_out_dir(cfg);

  const GaussTestReport report = gaussianity_test(cfg.n_units, cfg.n_seeds, law, act, ds,
                                                  cfg.x_index, cfg.seed, cfg.workers);
  ordered_json j;
  j["subcommand"] = "gauss-test";
  j["config"] = config_echo(cfg);
  j["N"] = report.n_units;
  j["n_seeds"] = report.n_seeds;
  j["x_index"] = report.x_index;
  j["sigma_xx"] = report.sigma_xx;
  j["ks_statistic"] = report.ks.statistic;
  j["p_value"] = report.ks.p_value;
  j["standardized_mean"] = report.standardized_mean;
  write_json_atomic(out_dir / "gauss_test.json", j);
  std::cout << "gauss-test: KS statistic " << report.ks.statistic << ", p-value "
            << report.ks.p_value << "\n";
  return 0;
}

// ------------------------------------------------------------------- sweep

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

bool all_zero(const std::vector<double>& v) {
  for (double x : v) {
    if (x != 0.0) return false;
  }
  return true;
}

int run_sweep(const CliState& st) {
  const auto& cfg = st.cfg;
  const Dataset ds = Dataset::from_csv(cfg.dataset_path);
  const Activation act = make_activation(cfg.activation);
  const InitLaw law = InitLaw::parse(cfg.c_law);
  const auto out_dir = prepare_out_dir(cfg);

  SweepConfig sweep;
  sweep.ns = cfg.ns;
  sweep.replicas = cfg.replicas;
  sweep.alpha = cfg.alpha;
  sweep.horizon = cfg.horizon;
  sweep.grid_points = cfg.grid_points;
  sweep.kernel_n_mc = cfg.n_mc;
  sweep.master_seed = cfg.seed;
  sweep.workers = cfg.workers;
  const SweepReport report = convergence_sweep(sweep, law, act, ds);

  ordered_json assertions;
  assertions["deviation_strictly_decreasing"] =
      strictly_decreasing(report.mean_deviation) || all_zero(report.mean_deviation);
  assertions["slope_in_range"] =
      !report.slope_defined || (report.slope >= -0.8 && report.slope <= -0.25);

  bool stationarity_ok = true;
  bool constant_zero = true;
  for (std::size_t f = 0; f < report.f_names.size(); ++f) {
    std::vector<double> gaps;
    gaps.reserve(report.ns.size());
    for (std::size_t n_idx = 0; n_idx < report.ns.size(); ++n_idx) {
      gaps.push_back(report.mean_gaps[n_idx][f]);
    }
    if (report.f_constant[f]) {
      constant_zero = constant_zero && all_zero(gaps);
    } else {
      stationarity_ok = stationarity_ok && (strictly_decreasing(gaps) || all_zero(gaps));
    }
  }
  assertions["stationarity_gaps_decreasing"] = stationarity_ok;
  assertions["constant_f_gap_zero"] = constant_zero;

  // martingale section
  std::vector<double> mart_vars;
  ordered_json mart = ordered_json::array();
  if (cfg.martingale_replicas > 0) {
    for (std::size_t idx = 0; idx < cfg.martingale_ns.size(); ++idx) {
      SgdConfig probe_cfg;
      probe_cfg.alpha = cfg.alpha;
      probe_cfg.horizon = cfg.martingale_horizon;
      const auto probe = martingale_variance_probe(
          act, ds, law, cfg.martingale_ns[idx], probe_cfg, cfg.martingale_replicas,
          derive_seed(cfg.seed, "sweep.martingale", idx), cfg.workers);
      mart_vars.push_back(probe.max_variance);
      ordered_json entry;
      entry["N"] = cfg.martingale_ns[idx];
      entry["max_variance"] = probe.max_variance;
      entry["component_variance"] = vector_json(probe.component_variance);
      mart.push_back(entry);
    }
    assertions["martingale_variance_decreasing"] =
        strictly_decreasing(mart_vars) || all_zero(mart_vars);
    bool ratio_ok = true;
    for (std::size_t i = 1; i < cfg.martingale_ns.size(); ++i) {
      if (cfg.martingale_ns[i] == 4 * cfg.martingale_ns[i - 1] && mart_vars[i] > 0.0) {
        const double ratio = mart_vars[i - 1] / mart_vars[i];
        ratio_ok = ratio_ok && ratio >= 2.0 && ratio <= 8.0;
      }
    }
    assertions["martingale_ratio_in_range"] = ratio_ok;
  }

  // gaussianity section (needs a nondegenerate c law)
  ordered_json gauss;
  if (cfg.gauss_seeds > 0) {
    if (law.c_degenerate()) {
      throw ConfigError("sweep: gauss_seeds > 0 requires a nondegenerate c law");
    }
    const auto g = gaussianity_test(cfg.n_units, cfg.gauss_seeds, law, act, ds, cfg.x_index,
                                    derive_seed(cfg.seed, "sweep.gauss"), cfg.workers);
    gauss["N"] = g.n_units;
    gauss["n_seeds"] = g.n_seeds;
    gauss["sigma_xx"] = g.sigma_xx;
    gauss["ks_statistic"] = g.ks.statistic;
    gauss["p_value"] = g.ks.p_value;
    assertions["gauss_p_above_0p01"] = g.ks.p_value > 0.01;
  }

  bool pass = true;
  for (const auto& [key, value] : assertions.items()) pass = pass && value.get<bool>();

  ordered_json j;
  j["subcommand"] = "sweep";
  j["config"] = config_echo(cfg);
  j["kernel"]["eigenvalues"] = vector_json(report.a_eigenvalues);
  j["kernel"]["max_stderr"] = report.a_stderr.maxCoeff();
  ordered_json conv = ordered_json::array();
  for (std::size_t n_idx = 0; n_idx < report.ns.size(); ++n_idx) {
    ordered_json row;
    row["N"] = report.ns[n_idx];
    row["mean_deviation"] = report.mean_deviation[n_idx];
    row["stderr_deviation"] = report.stderr_deviation[n_idx];
    row["replica_deviations"] = report.replica_deviations[n_idx];
    conv.push_back(row);
  }
  j["convergence"] = conv;
  j["slope_defined"] = report.slope_defined;
  if (report.slope_defined) {
    j["slope"] = report.slope;
  } else {
    j["slope"] = "not applicable (zero deviations)";
  }
  ordered_json stat;
  stat["f_names"] = report.f_names;
  ordered_json gap_rows = ordered_json::array();
  for (std::size_t n_idx = 0; n_idx < report.ns.size(); ++n_idx) {
    ordered_json row;
    row["N"] = report.ns[n_idx];
    row["mean_gaps"] = report.mean_gaps[n_idx];
    gap_rows.push_back(row);
  }
  stat["rows"] = gap_rows;
  j["stationarity"] = stat;
  if (cfg.martingale_replicas > 0) j["martingale"] = mart;
  if (cfg.gauss_seeds > 0) j["gaussianity"] = gauss;
  j["assertions"] = assertions;
  j["pass"] = pass;
  write_json_atomic(out_dir / "sweep.json", j);

  // flat CSV tables
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t n_idx = 0; n_idx < report.ns.size(); ++n_idx) {
      rows.push_back({static_cast<double>(report.ns[n_idx]), report.mean_deviation[n_idx],
                      report.stderr_deviation[n_idx]});
    }
    write_csv((out_dir / "convergence.csv").string(),
              {"n", "mean_deviation", "stderr_deviation"}, rows);
  }
  {
    std::vector<std::vector<double>> rows;
    for (std::size_t n_idx = 0; n_idx < report.ns.size(); ++n_idx) {
      for (std::size_t r = 0; r < report.replica_deviations[n_idx].size(); ++r) {
        rows.push_back({static_cast<double>(report.ns[n_idx]), static_cast<double>(r),
                        report.replica_deviations[n_idx][r]});
      }
    }
    write_csv((out_dir / "convergence_replicas.csv").string(), {"n", "replica", "deviation"},
              rows);
  }
  {
    std::vector<std::string> header = {"n"};
    header.insert(header.end(), report.f_names.begin(), report.f_names.end());
    std::vector<std::vector<double>> rows;
    for (std::size_t n_idx = 0; n_idx < report.ns.size(); ++n_idx) {
      std::vector<double> row = {static_cast<double>(report.ns[n_idx])};
      row.insert(row.end(), report.mean_gaps[n_idx].begin(), report.mean_gaps[n_idx].end());
      rows.push_back(std::move(row));
    }
    write_csv((out_dir / "stationarity.csv").string(), header, rows);
  }
  if (cfg.martingale_replicas > 0) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < cfg.martingale_ns.size(); ++i) {
      rows.push_back({static_cast<double>(cfg.martingale_ns[i]), mart_vars[i]});
    }
    write_csv((out_dir / "martingale.csv").string(), {"n", "max_variance"}, rows);
  }

  std::cout << "sweep: " << (pass ? "all assertions passed" : "ASSERTION FAILURE") << " (see "
            << (out_dir / "sweep.json").string() << ")\n";
  return pass ? 0 : 1;
}

// ------------------------------------------------------------------ report

int run_report(const CliState& st) {
  const std::filesystem::path dir(st.cfg.out_dir);
  bool found = false;
  bool all_pass = true;

  const auto load = [&](const char* name) -> ordered_json {
    const auto path = dir / name;
    if (!std::filesystem::exists(path)) return nullptr;
    std::ifstream in(path);
    ordered_json j;
    in >> j;
    found = true;
    return j;
  };

  if (const auto j = load("simulate.json"); !j.is_null()) {
    std::cout << "simulate: " << j["step_count"] << " steps, c_max "
              << j["monitors"]["c_max"].dump() << " (bound " << j["monitors"]["c_max_bound"].dump()
              << ", within: " << j["monitors"]["c_max_within_bound"].dump() << ")\n";
    all_pass = all_pass && j["monitors"]["c_max_within_bound"].get<bool>();
  }
  if (const auto j = load("kernel.json"); !j.is_null()) {
    std::cout << "kernel:   lambda_min " << j["lambda_min"].dump() << ", lambda_max "
              << j["lambda_max"].dump() << ", positive definite "
              << j["positive_definite"].dump() << ", max stderr " << j["max_stderr"].dump()
              << "\n";
  }
  if (const auto j = load("ode.json"); !j.is_null()) {
    std::cout << "ode:      final ||h - y||_inf " << j["final_err_inf"].dump()
              << ", rk4 sup diff " << j["rk4"]["sup_diff_vs_spectral"].dump() << "\n";
  }
  if (const auto j = load("gauss_test.json"); !j.is_null()) {
    std::cout << "gauss:    KS " << j["ks_statistic"].dump() << ", p " << j["p_value"].dump()
              << " at N " << j["N"].dump() << "\n";
  }
  if (const auto j = load("sweep.json"); !j.is_null()) {
    std::cout << "sweep:    slope " << j["slope"].dump() << ", pass " << j["pass"].dump() << "\n";
    for (const auto& [key, value] : j["assertions"].items()) {
      std::cout << "          " << (value.get<bool>() ? "PASS " : "FAIL ") << key << "\n";
    }
    all_pass = all_pass && j["pass"].get<bool>();
  }

  if (!found) {
    throw ConfigError("report: no report files found in '" + st.cfg.out_dir + "'");
  }
  std::cout << (all_pass ? "report: OK" : "report: FAILURES PRESENT") << "\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for Xavier-scaled single-layer networks"};
  app.require_subcommand(1);

  CliState st;

  auto* simulate = app.add_subcommand("simulate", "train one finite-N network, export h_t");
  add_common_options(simulate, st, true);
  simulate->add_option("--N", st.cfg.n_units, "hidden units")->capture_default_str();
  simulate->add_option("--grid-points", st.cfg.grid_points, "record times on [0, T]")
      ->capture_default_str();

  auto* kernel = app.add_subcommand("kernel", "estimate the limit kernel A, report spectrum");
  add_common_options(kernel, st, true);
  kernel->add_option("--n-mc", st.cfg.n_mc, "Monte-Carlo samples")->capture_default_str();

  auto* ode = app.add_subcommand("ode", "solve the limit ODE from a Gaussian initial condition");
  add_common_options(ode, st, true);
  ode->add_option("--n-mc", st.cfg.n_mc, "Monte-Carlo samples for A and Sigma")
      ->capture_default_str();
  ode->add_option("--grid-points", st.cfg.grid_points, "path sample count")
      ->capture_default_str();
  ode->add_option("--dt", st.cfg.dt, "RK4 cross-check step")->capture_default_str();
  ode->add_option("--kernel-csv", st.kernel_csv, "reuse a kernel matrix CSV instead of sampling");

  auto* gauss = app.add_subcommand("gauss-test", "KS test of the Gaussian initialization limit");
  add_common_options(gauss, st, true);
  gauss->add_option("--N", st.cfg.n_units, "hidden units")->capture_default_str();
  gauss->add_option("--n-seeds", st.cfg.n_seeds, "independent initializations")
      ->capture_default_str();
  gauss->add_option("--x-index", st.cfg.x_index, "dataset point to test")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "N-sweep verification report");
  add_common_options(sweep, st, true);
  sweep->add_option("--Ns", st.ns_text, "comma-separated N values")->capture_default_str();
  sweep->add_option("--replicas", st.cfg.replicas, "replicas per N")->capture_default_str();
  sweep->add_option("--n-mc", st.cfg.n_mc, "Monte-Carlo samples for A")->capture_default_str();
  sweep->add_option("--grid-points", st.cfg.grid_points, "comparison grid on [0, T]")
      ->capture_default_str();
  sweep->add_option("--martingale-Ns", st.martingale_ns_text, "martingale probe N values")
      ->capture_default_str();
  sweep->add_option("--martingale-replicas", st.cfg.martingale_replicas,
                    "martingale probe replicas (0 = skip)")
      ->capture_default_str();
  sweep->add_option("--martingale-T", st.cfg.martingale_horizon, "martingale probe horizon")
      ->capture_default_str();
  sweep->add_option("--gauss-seeds", st.cfg.gauss_seeds,
                    "gaussianity section seeds (0 = skip; needs uniform c law)")
      ->capture_default_str();
  sweep->add_option("--N", st.cfg.n_units, "hidden units for the gaussianity section")
      ->capture_default_str();
  sweep->add_option("--x-index", st.cfg.x_index, "dataset point for the gaussianity section")
      ->capture_default_str();

  auto* report = app.add_subcommand("report", "summarize prior outputs in --out");
  add_common_options(report, st, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    st.cfg.ns = parse_size_list(st.ns_text);
    st.cfg.martingale_ns = parse_size_list(st.martingale_ns_text);
    if (st.cfg.workers == 0) st.cfg.workers = 1;

    if (simulate->parsed()) return run_simulate(st);
    if (kernel->parsed()) return run_kernel(st);
    if (ode->parsed()) return run_ode(st);
    if (gauss->parsed()) return run_gauss_test(st);
    if (sweep->parsed()) return run_sweep(st);
    if (report->parsed()) return run_report(st);
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
