#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "widenet/activation.hpp"
#include "widenet/dataset.hpp"
#include "widenet/network.hpp"
#include "widenet/rng.hpp"

namespace widenet {

// Limit kernel estimate
//   A_{ij} = (alpha/M) E[ sigma(w.x_i) sigma(w.x_j)
//                         + c^2 sigma'(w.x_i) sigma'(w.x_j) x_i.x_j ],
// (c, w) ~ mu0, symmetric by construction and PSD up to Monte-Carlo noise.
struct KernelMatrix {
  Eigen::MatrixXd a;
  Eigen::MatrixXd stderr_;  // per-entry Monte-Carlo standard error
  double alpha = 0.0;
  std::size_t n_mc = 0;
};

// Monte-Carlo estimator, the primary route for any d. E[c^2] enters
// analytically (C is independent of W), halving the sampled dimensions.
// Sampling is chunked with per-chunk streams derived from (rng, chunk index),
// so the result does not depend on the worker count. n_mc >= 1e4.
// The raw-point overload exists so degenerate point sets (e.g. duplicated
// inputs) can be analyzed; Dataset itself rejects duplicates.
KernelMatrix estimate_A(const InitLaw& law, const Activation& act,
                        std::span<const std::vector<double>> xs, double alpha, std::size_t n_mc,
                        Rng& rng, std::size_t workers = 1);
KernelMatrix estimate_A(const InitLaw& law, const Activation& act, const Dataset& ds, double alpha,
                        std::size_t n_mc, Rng& rng, std::size_t workers = 1);

// Gauss-Hermite rule mapped to E_{w~N(0,1)}[f(w)] = sum_k weight_k f(sqrt(2) node_k);
// weights sum to 1.
struct GaussHermite {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};
GaussHermite gauss_hermite(std::size_t n_nodes);

// Deterministic quadrature oracle for A, d = 1 only, n_nodes >= 64.
Eigen::MatrixXd quadrature_A_1d(const InitLaw& law, const Activation& act,
                                std::span<const std::vector<double>> xs, double alpha,
                                std::size_t n_nodes);
Eigen::MatrixXd quadrature_A_1d(const InitLaw& law, const Activation& act, const Dataset& ds,
                                double alpha, std::size_t n_nodes);

struct PdReport {
  Eigen::VectorXd eigenvalues;  // ascending
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double threshold = 0.0;  // rel_threshold * lambda_max
  bool is_pd = false;
};

// Full symmetric eigendecomposition; positive definite iff
// lambda_min > rel_threshold * lambda_max.
PdReport check_pd(const KernelMatrix& k, double rel_threshold = 1e-8);

// E[U U^T] with U(x) = sqrt(alpha/M) sigma(W.x), W ~ N(0, I_d); the
// covariance representation of A in the degenerate-C regime.
KernelMatrix estimate_u_covariance(const Activation& act,
                                   std::span<const std::vector<double>> xs, double alpha,
                                   std::size_t n_mc, Rng& rng, std::size_t workers = 1);

// Max entrywise |estimate_A - E[UU^T]| with both estimators fed the identical
// sample stream. Requires the degenerate c law.
double covariance_representation_check(const InitLaw& law, const Activation& act,
                                       std::span<const std::vector<double>> xs, double alpha,
                                       std::size_t n_mc, Rng& rng, std::size_t workers = 1);

// Indices of all-zero input vectors. With an odd activation these zero out
// sigma(w.x) identically and make A singular even for distinct samples; the
// CLI warns rather than guessing intent.
std::vector<std::size_t> zero_input_indices(std::span<const std::vector<double>> xs);

}  // namespace widenet
