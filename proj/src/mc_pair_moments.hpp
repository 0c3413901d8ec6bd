#pragma once

// Shared chunked Monte-Carlo engine for second-moment matrices over
// w ~ N(0, I_d): per-pair mean and standard error of
//   sigma(w.x_i) sigma(w.x_j) + ec2 * sigma'(w.x_i) sigma'(w.x_j) (x_i . x_j).
// Samples are drawn in fixed chunks whose streams derive from
// (base_seed, chunk index) and partial sums merge in chunk order, so results
// are independent of the worker count.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "widenet/activation.hpp"

namespace widenet::detail {

struct PairMoments {
  Eigen::MatrixXd mean;     // M x M, exactly symmetric
  Eigen::MatrixXd stderr_;  // per-entry standard error of the mean
  std::size_t n = 0;
};

PairMoments mc_pair_moments(const Activation& act, std::span<const std::vector<double>> xs,
                            double ec2, std::uint64_t base_seed, std::size_t n_mc,
                            std::size_t workers);

}  // namespace widenet::detail
