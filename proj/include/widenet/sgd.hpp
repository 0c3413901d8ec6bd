#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "widenet/activation.hpp"
#include "widenet/dataset.hpp"
#include "widenet/network.hpp"

namespace widenet {

// alpha is the limit learning-rate constant; the chain always runs at
// alpha^N = alpha/N so the effective per-parameter rate is order N^{-3/2}.
struct SgdConfig {
  double alpha = 1.0;
  double horizon = 1.0;                    // T; the chain runs floor(T*N) steps
  std::vector<double> record_times;        // sorted, within [0, T]
  std::uint64_t seed = 0;                  // data-sampling stream
};

void validate(const SgdConfig& cfg);

// Time-gridded record of the scaled process h_t = g_{floor(N t)} plus the
// parameter-bound monitors.
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> h;      // h at each record time, dataset order
  std::vector<double> c_max;           // running max_{i, k<=step} |C^i_k| per record
  std::vector<double> w_mean_norm;     // (1/N) sum_i |W^i| at each record
  std::size_t step_count = 0;          // floor(T*N)
  double c0_max = 0.0;                 // max_i |C^i_0|
  double y_abs_max = 0.0;              // max |y| over the dataset
  double g_abs_max = 0.0;              // max |g_k(x_k)| over executed steps
};

struct TrainResult {
  Trajectory trajectory;
  Params params;  // state after the final step
};

// One update at effective rate alpha_eff = alpha/N:
//   C^i += (alpha_eff/sqrt N) (y - g(x)) sigma(W^i.x)
//   W^i += (alpha_eff/sqrt N) (y - g(x)) C^i sigma'(W^i.x) x
// with g(x) and C^i on the right-hand side taken at the pre-step state.
void sgd_step(Params& p, const Activation& act, std::span<const double> x, double y,
              double alpha_eff);

// Max over parameters of |applied update - (-alpha_eff * grad)| /
// (|applied update| + 1e-12), the gradient of (1/2)(y - g(x))^2 taken by
// central finite differences with step h_fd in [1e-7, 1e-4].
double gradient_identity_check(const Params& p, const Activation& act, std::span<const double> x,
                               double y, double alpha_eff, double h_fd);

// Runs floor(T*N) steps with i.i.d. pairs sampled from the dataset, records h
// at floor(N*t) for each requested t, and aborts with the step index if any
// parameter stops being finite.
TrainResult train(const Params& p0, const Activation& act, const Dataset& ds,
                  const SgdConfig& cfg);

// <f, nu> = (1/N) sum_i f(C^i, W^i)
double measure_pairing(const Params& p,
                       const std::function<double(double, std::span<const double>)>& f);

struct MartingaleProbe {
  std::size_t n_units = 0;
  std::size_t n_replicas = 0;
  Eigen::VectorXd component_variance;  // across-replica variance of the terminal sum
  double max_variance = 0.0;
};

// Accumulates, per step, the realized h increment minus its exact conditional
// mean (the pi-average over the M dataset pairs) and returns the
// across-replica variance of the terminal sum. The realized candidate is
// reused for the chain update, so an M=1 dataset gives exactly zero.
MartingaleProbe martingale_variance_probe(const Activation& act, const Dataset& ds,
                                          const InitLaw& law, std::size_t n_units,
                                          const SgdConfig& cfg, std::size_t n_replicas,
                                          std::uint64_t master_seed, std::size_t workers = 1);

}  // namespace widenet
