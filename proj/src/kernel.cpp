#include "widenet/kernel.hpp"

#include <cmath>

#include "mc_pair_moments.hpp"
#include "widenet/errors.hpp"

namespace widenet {

namespace {

void require_consistent(std::span<const std::vector<double>> xs) {
  if (xs.empty()) throw ConfigError("kernel: empty point set");
  for (const auto& x : xs) {
    if (x.size() != xs[0].size()) throw ConfigError("kernel: point dimensions differ");
    for (double v : x) {
      if (!std::isfinite(v)) throw ConfigError("kernel: non-finite point coordinate");
    }
  }
}

}  // namespace

KernelMatrix estimate_A(const InitLaw& law, const Activation& act,
                        std::span<const std::vector<double>> xs, double alpha, std::size_t n_mc,
                        Rng& rng, std::size_t workers) {
  require_consistent(xs);
  if (n_mc < 10000) throw ConfigError("estimate_A: n_mc must be >= 1e4");
  const double scale = alpha / static_cast<double>(xs.size());
  const auto moments =
      detail::mc_pair_moments(act, xs, law.c_second_moment(), rng.next_u64(), n_mc, workers);
  KernelMatrix out;
  out.a = scale * moments.mean;
  out.stderr_ = scale * moments.stderr_;
  out.alpha = alpha;
  out.n_mc = n_mc;
  return out;
}

KernelMatrix estimate_A(const InitLaw& law, const Activation& act, const Dataset& ds, double alpha,
                        std::size_t n_mc, Rng& rng, std::size_t workers) {
  return estimate_A(law, act, ds.inputs(), alpha, n_mc, rng, workers);
}

GaussHermite gauss_hermite(std::size_t n_nodes) {
  if (n_nodes < 2) throw ConfigError("gauss_hermite: need at least 2 nodes");
  // Golub-Welsch on the Hermite Jacobi matrix (weight exp(-x^2)): nodes are
  // the eigenvalues, weights are the squared first eigenvector components.
  const auto n = static_cast<Eigen::Index>(n_nodes);
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) {
    const double b = std::sqrt(static_cast<double>(k) / 2.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jacobi);
  if (es.info() != Eigen::Success) throw NumericalError("gauss_hermite: eigensolver failed");
  GaussHermite out;
  out.nodes = es.eigenvalues();
  out.weights = es.eigenvectors().row(0).transpose().cwiseAbs2();
  return out;
}

Eigen::MatrixXd quadrature_A_1d(const InitLaw& law, const Activation& act,
                                std::span<const std::vector<double>> xs, double alpha,
                                std::size_t n_nodes) {
  require_consistent(xs);
  if (xs[0].size() != 1) {
    throw ConfigError("quadrature_A_1d: only d=1 point sets are supported");
  }
  if (n_nodes < 64) throw ConfigError("quadrature_A_1d: n_nodes must be >= 64");

  const auto m = static_cast<Eigen::Index>(xs.size());
  const double ec2 = law.c_second_moment();
  const auto rule = gauss_hermite(n_nodes);

  Eigen::MatrixXd s(m, static_cast<Eigen::Index>(n_nodes));
  Eigen::MatrixXd ds(m, static_cast<Eigen::Index>(n_nodes));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double xi = xs[static_cast<std::size_t>(i)][0];
    for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
      const double w = std::sqrt(2.0) * rule.nodes[k];
      s(i, k) = act.eval(w * xi);
      ds(i, k) = act.d1(w * xi);
    }
  }

  const double scale = alpha / static_cast<double>(m);
  Eigen::MatrixXd a(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      double sigma_term = 0.0;
      double deriv_term = 0.0;
      for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
        sigma_term += rule.weights[k] * s(i, k) * s(j, k);
        deriv_term += rule.weights[k] * ds(i, k) * ds(j, k);
      }
      const double gram = xs[static_cast<std::size_t>(i)][0] * xs[static_cast<std::size_t>(j)][0];
      const double v = scale * (sigma_term + ec2 * deriv_term * gram);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return a;
}

Eigen::MatrixXd quadrature_A_1d(const InitLaw& law, const Activation& act, const Dataset& ds,
                                double alpha, std::size_t n_nodes) {
  return quadrature_A_1d(law, act, ds.inputs(), alpha, n_nodes);
}

PdReport check_pd(const KernelMatrix& k, double rel_threshold) {
  if (!k.a.allFinite()) throw NumericalError("check_pd: kernel matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.a);
  if (es.info() != Eigen::Success) throw NumericalError("check_pd: eigensolver failed");
  PdReport out;
  out.eigenvalues = es.eigenvalues();
  out.lambda_min = out.eigenvalues[0];
  out.lambda_max = out.eigenvalues[out.eigenvalues.size() - 1];
  out.threshold = rel_threshold * out.lambda_max;
  out.is_pd = out.lambda_min > out.threshold;
  return out;
}

KernelMatrix estimate_u_covariance(const Activation& act,
                                   std::span<const std::vector<double>> xs, double alpha,
                                   std::size_t n_mc, Rng& rng, std::size_t workers) {
  require_consistent(xs);
  if (n_mc < 10000) throw ConfigError("estimate_u_covariance: n_mc must be >= 1e4");
  const double scale = alpha / static_cast<double>(xs.size());
  const auto moments = detail::mc_pair_moments(act, xs, 0.0, rng.next_u64(), n_mc, workers);
  KernelMatrix out;
  out.a = scale * moments.mean;
  out.stderr_ = scale * moments.stderr_;
  out.alpha = alpha;
  out.n_mc = n_mc;
  return out;
}

double covariance_representation_check(const InitLaw& law, const Activation& act,
                                       std::span<const std::vector<double>> xs, double alpha,
                                       std::size_t n_mc, Rng& rng, std::size_t workers) {
  if (!law.c_degenerate()) {
    throw ConfigError("covariance_representation_check: requires the point-mass c law");
  }
  // Identical copies of the stream feed both estimators, so the two sums run
  // over the same samples.
  Rng stream_a = rng;
  Rng stream_u = rng;
  rng.next_u64();
  const KernelMatrix a = estimate_A(law, act, xs, alpha, n_mc, stream_a, workers);
  const KernelMatrix u = estimate_u_covariance(act, xs, alpha, n_mc, stream_u, workers);
  return (a.a - u.a).cwiseAbs().maxCoeff();
}

std::vector<std::size_t> zero_input_indices(std::span<const std::vector<double>> xs) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    bool all_zero = true;
    for (double v : xs[i]) {
      if (v != 0.0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) out.push_back(i);
  }
  return out;
}

}  // namespace widenet
