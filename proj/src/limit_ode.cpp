#include "widenet/limit_ode.hpp"

#include <cmath>
#include <string>

#include "widenet/errors.hpp"

namespace widenet {

OdeSolution::OdeSolution(Eigen::MatrixXd a, Eigen::VectorXd y_hat, Eigen::VectorXd h0)
    : a_(std::move(a)), y_hat_(std::move(y_hat)), h0_(std::move(h0)) {
  if (!a_.allFinite() || !y_hat_.allFinite() || !h0_.allFinite()) {
    throw NumericalError("ode: non-finite input");
  }
  if (a_.rows() != a_.cols() || a_.rows() != y_hat_.size() || h0_.size() != y_hat_.size()) {
    throw ConfigError("ode: shape mismatch");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a_);
  if (es.info() != Eigen::Success) throw NumericalError("ode: eigensolver failed");
  q_ = es.eigenvectors();
  lambda_ = es.eigenvalues();
  coeff_ = q_.transpose() * (h0_ - y_hat_);
}

Eigen::VectorXd OdeSolution::eval(double t) const {
  Eigen::VectorXd decayed(coeff_.size());
  for (Eigen::Index k = 0; k < coeff_.size(); ++k) {
    decayed[k] = std::exp(-lambda_[k] * t) * coeff_[k];
  }
  return y_hat_ + q_ * decayed;
}

double OdeSolution::long_time_error(double t) const {
  return (eval(t) - y_hat_).cwiseAbs().maxCoeff();
}

OdeSolution solve_spectral(const Eigen::MatrixXd& a, const Eigen::VectorXd& y_hat,
                           const Eigen::VectorXd& h0) {
  return OdeSolution(a, y_hat, h0);
}

Rk4Path solve_rk4(const Eigen::MatrixXd& a, const Eigen::VectorXd& y_hat,
                  const Eigen::VectorXd& h0, double dt, double t_end) {
  if (!a.allFinite() || !y_hat.allFinite() || !h0.allFinite()) {
    throw NumericalError("rk4: non-finite input");
  }
  if (!(dt > 0.0) || !(t_end >= 0.0)) throw ConfigError("rk4: dt > 0 and t_end >= 0 required");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const double lambda_max = es.eigenvalues().maxCoeff();
  if (dt > 0.1 / std::max(lambda_max, 1.0)) {
    throw ConfigError("rk4: dt must be <= 0.1 / max(lambda_max, 1)");
  }

  const auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
  const auto rhs = [&](const Eigen::VectorXd& h) { return (a * (y_hat - h)).eval(); };

  Rk4Path path;
  path.times.reserve(steps + 1);
  path.states.reserve(steps + 1);
  Eigen::VectorXd h = h0;
  path.times.push_back(0.0);
  path.states.push_back(h);
  for (std::size_t k = 0; k < steps; ++k) {
    const Eigen::VectorXd k1 = rhs(h);
    const Eigen::VectorXd k2 = rhs(h + 0.5 * dt * k1);
    const Eigen::VectorXd k3 = rhs(h + 0.5 * dt * k2);
    const Eigen::VectorXd k4 = rhs(h + dt * k3);
    h += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!h.allFinite()) {
      throw NumericalError("rk4: non-finite state at step " + std::to_string(k + 1) +
                           " (reduce dt)");
    }
    path.times.push_back(static_cast<double>(k + 1) * dt);
    path.states.push_back(h);
  }
  return path;
}

double objective_J(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, const Eigen::VectorXd& h) {
  if (a.rows() != a.cols() || a.rows() != y.size() || y.size() != h.size()) {
    throw ConfigError("objective_J: shape mismatch");
  }
  const Eigen::VectorXd r = y - h;
  return r.dot(a * r);
}

Eigen::VectorXd sample_h0(const Eigen::MatrixXd& sigma, Rng& rng) {
  if (sigma.rows() != sigma.cols()) throw ConfigError("sample_h0: Sigma must be square");
  if (!sigma.allFinite()) throw NumericalError("sample_h0: non-finite Sigma");
  for (Eigen::Index i = 0; i < sigma.rows(); ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      if (sigma(i, j) != sigma(j, i)) throw ConfigError("sample_h0: Sigma must be symmetric");
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sigma);
  if (es.info() != Eigen::Success) throw NumericalError("sample_h0: eigensolver failed");
  const Eigen::VectorXd& lambda = es.eigenvalues();
  if (lambda[0] < -1e-10) {
    throw ConfigError("sample_h0: Sigma is not PSD (lambda_min < -1e-10)");
  }
  Eigen::VectorXd scaled(lambda.size());
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    scaled[k] = std::sqrt(std::max(lambda[k], 0.0)) * rng.normal();
  }
  return es.eigenvectors() * scaled;
}

}  // namespace widenet
