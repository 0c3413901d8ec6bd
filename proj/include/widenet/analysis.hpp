#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "widenet/activation.hpp"
#include "widenet/dataset.hpp"
#include "widenet/kernel.hpp"
#include "widenet/network.hpp"
#include "widenet/stats.hpp"

namespace widenet {

struct TestFunction {
  std::string name;
  std::function<double(double, std::span<const double>)> fn;
  bool constant = false;
};

// {1, c, c^2, tanh(w_1), c*tanh(w_1), min(|w|, 10)}; f = 1 is the
// mass-conservation control whose gap must be exactly zero.
const std::vector<TestFunction>& stationarity_catalog();

struct ReplicaOutcome {
  double deviation = 0.0;     // sup over the grid of ||h^N_t - h^lim_t||_inf
  std::vector<double> gaps;   // |<f, mu_T> - <f, mu_0>| per catalog entry
};

// One finite-N run coupled to the limit: the ODE starts from the realized
// initial output h0 = g_0^N, so the measured deviation is exactly the
// fluctuation the limit theorem says vanishes. Data order is not coupled.
ReplicaOutcome run_coupled_replica(std::size_t n_units, std::uint64_t replica_seed,
                                   const InitLaw& law, const Activation& act, const Dataset& ds,
                                   double alpha, double horizon, std::span<const double> grid,
                                   const Eigen::MatrixXd& a);

double coupled_deviation(std::size_t n_units, std::uint64_t replica_seed, const InitLaw& law,
                         const Activation& act, const Dataset& ds, double alpha, double horizon,
                         std::span<const double> grid, const Eigen::MatrixXd& a);

struct SweepConfig {
  std::vector<std::size_t> ns;  // >= 3 values, strictly increasing
  std::size_t replicas = 20;    // >= 10
  double alpha = 1.0;
  double horizon = 1.0;
  std::size_t grid_points = 41;
  std::size_t kernel_n_mc = 1000000;
  std::uint64_t master_seed = 1;
  std::size_t workers = 1;
};

struct SweepReport {
  std::vector<std::size_t> ns;
  std::vector<std::vector<double>> replica_deviations;  // [n][replica]
  std::vector<double> mean_deviation;
  std::vector<double> stderr_deviation;
  bool slope_defined = false;  // false for degenerate all-zero sweeps
  double slope = 0.0;          // least-squares slope of log mean vs log N
  std::vector<std::string> f_names;
  std::vector<bool> f_constant;
  std::vector<std::vector<double>> mean_gaps;  // [n][f]
  Eigen::MatrixXd a;                           // kernel shared across all N
  Eigen::MatrixXd a_stderr;
  Eigen::VectorXd a_eigenvalues;
};

// Runs replicas for every N against one shared kernel estimate (same kernel
// seed for all N, so kernel error never masquerades as trajectory deviation)
// and aggregates both the coupled deviations and the stationarity gaps.
SweepReport convergence_sweep(const SweepConfig& cfg, const InitLaw& law, const Activation& act,
                              const Dataset& ds);

// The stationarity table of the same sweep: mean |<f, mu_T> - <f, mu_0>| per
// (N, f).
std::vector<std::vector<double>> stationarity_decay(const SweepConfig& cfg, const InitLaw& law,
                                                    const Activation& act, const Dataset& ds);

struct GaussTestReport {
  KsResult ks;
  double sigma_xx = 0.0;
  double standardized_mean = 0.0;
  std::size_t n_units = 0;
  std::size_t n_seeds = 0;
  std::size_t x_index = 0;
};

// Draws n_seeds independent initializations, standardizes g_0^N(x^(index)) by
// the quadrature (d=1) or Monte-Carlo variance Sigma_xx, and tests against
// N(0,1). Requires a nondegenerate c law and n_seeds >= 200.
GaussTestReport gaussianity_test(std::size_t n_units, std::size_t n_seeds, const InitLaw& law,
                                 const Activation& act, const Dataset& ds, std::size_t x_index,
                                 std::uint64_t master_seed, std::size_t workers = 1);

}  // namespace widenet
