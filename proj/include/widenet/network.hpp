#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "widenet/activation.hpp"
#include "widenet/dataset.hpp"
#include "widenet/rng.hpp"

namespace widenet {

// Hidden-unit parameters (C^i, W^i), i = 0..n-1. W is row-major n x d; row i
// is the weight vector of unit i. Owned by one simulation replica at a time.
struct Params {
  std::vector<double> c;
  std::vector<double> w;
  std::size_t n = 0;
  std::size_t d = 0;

  std::span<double> w_row(std::size_t i) { return {w.data() + i * d, d}; }
  std::span<const double> w_row(std::size_t i) const { return {w.data() + i * d, d}; }
};

// Product initialization law: C from a compact-support mean-zero law
// (point mass at 0 or uniform(-a, a)), W coordinates i.i.d. standard normal,
// C independent of W. point_mass(0) with standard-normal W is the regime in
// which the kernel is provably positive definite.
class InitLaw {
 public:
  enum class CKind { point_mass_zero, uniform };

  static InitLaw corollary() { return InitLaw{CKind::point_mass_zero, 0.0}; }
  static InitLaw uniform_c(double half_width);

  // "point_mass" or "uniform:<half_width>"
  static InitLaw parse(std::string_view text);
  std::string describe() const;

  CKind c_kind() const { return kind_; }
  double c_half_width() const { return half_width_; }
  bool c_degenerate() const { return kind_ == CKind::point_mass_zero; }

  double c_second_moment() const;  // E[c^2]: 0 or a^2/3
  double c_support_bound() const { return half_width_; }

  double draw_c(Rng& rng) const;

 private:
  InitLaw(CKind kind, double half_width) : kind_(kind), half_width_(half_width) {}

  CKind kind_;
  double half_width_;
};

// Draws n i.i.d. rows (C^i, W^i); row order fixed so a seed reproduces the
// state bit for bit.
Params init(std::size_t n, std::size_t d, const InitLaw& law, Rng& rng);

// g(x) = (1/sqrt n) sum_i C^i sigma(W^i . x), accumulated in index order.
double forward(const Params& p, const Activation& act, std::span<const double> x);

// Componentwise forward in dataset order.
Eigen::VectorXd forward_all(const Params& p, const Activation& act, const Dataset& ds);

// (1/M) sum_i (y^(i) - g(x^(i)))^2
double loss(const Params& p, const Activation& act, const Dataset& ds);

struct CovEstimate {
  Eigen::MatrixXd sigma;    // M x M, exactly symmetric
  Eigen::MatrixXd stderr_;  // per-entry Monte-Carlo standard error
  std::size_t n_mc = 0;
};

// Monte-Carlo estimate of Sigma_{ij} = E[c^2 sigma(w.x_i) sigma(w.x_j)], the
// covariance of the Gaussian initial-output limit. E[c^2] is factored
// analytically (C is independent of W), so only w is sampled; n_mc >= 1e4.
CovEstimate init_output_covariance(const InitLaw& law, const Activation& act, const Dataset& ds,
                                   std::size_t n_mc, Rng& rng, std::size_t workers = 1);

}  // namespace widenet
