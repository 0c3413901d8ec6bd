#pragma once

#include <Eigen/Dense>
#include <vector>

#include "widenet/rng.hpp"

namespace widenet {

// Closed-form solution h_t = y_hat + Q exp(-Lambda t) Q^T (h0 - y_hat) of the
// limit ODE dh = A (y_hat - h) dt for symmetric A. The spectral form is the
// reference; RK4 below exists as an independent cross-check.
class OdeSolution {
 public:
  OdeSolution(Eigen::MatrixXd a, Eigen::VectorXd y_hat, Eigen::VectorXd h0);

  Eigen::VectorXd eval(double t) const;
  double long_time_error(double t) const;  // ||eval(t) - y_hat||_inf

  const Eigen::VectorXd& eigenvalues() const { return lambda_; }
  const Eigen::MatrixXd& eigenvectors() const { return q_; }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::VectorXd& y_hat() const { return y_hat_; }
  const Eigen::VectorXd& h0() const { return h0_; }

 private:
  Eigen::MatrixXd a_;
  Eigen::MatrixXd q_;
  Eigen::VectorXd lambda_;
  Eigen::VectorXd y_hat_;
  Eigen::VectorXd h0_;
  Eigen::VectorXd coeff_;  // Q^T (h0 - y_hat)
};

OdeSolution solve_spectral(const Eigen::MatrixXd& a, const Eigen::VectorXd& y_hat,
                           const Eigen::VectorXd& h0);

struct Rk4Path {
  std::vector<double> times;
  std::vector<Eigen::VectorXd> states;
};

// Classical RK4 on h' = A (y_hat - h) over [0, t_end] with fixed step dt.
// Requires dt <= 0.1 / max(lambda_max, 1); any non-finite state aborts with a
// step-size error.
Rk4Path solve_rk4(const Eigen::MatrixXd& a, const Eigen::VectorXd& y_hat,
                  const Eigen::VectorXd& h0, double dt, double t_end);

// J(y, h) = (y - h)^T A (y - h), the quadratic objective the limit descends.
double objective_J(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const Eigen::VectorXd& h);

// G ~ N(0, Sigma) via the spectral square root. Sigma must be exactly
// symmetric with lambda_min >= -1e-10; eigenvalues in [-1e-10, 0) clamp to 0.
Eigen::VectorXd sample_h0(const Eigen::MatrixXd& sigma, Rng& rng);

}  // namespace widenet
