#include "widenet/network.hpp"

#include <cmath>
#include <cstdlib>

#include "mc_pair_moments.hpp"
#include "widenet/errors.hpp"

namespace widenet {

InitLaw InitLaw::uniform_c(double half_width) {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) {
    throw ConfigError("init law: uniform half-width must be positive and finite");
  }
  return InitLaw{CKind::uniform, half_width};
}

InitLaw InitLaw::parse(std::string_view text) {
  if (text == "point_mass") return corollary();
  constexpr std::string_view prefix = "uniform:";
  if (text.substr(0, prefix.size()) == prefix) {
    const std::string arg(text.substr(prefix.size()));
    char* end = nullptr;
    const double a = std::strtod(arg.c_str(), &end);
    if (arg.empty() || end != arg.c_str() + arg.size()) {
      throw ConfigError("init law: cannot parse half-width in '" + std::string(text) + "'");
    }
    return uniform_c(a);
  }
  throw ConfigError("init law: '" + std::string(text) +
                    "' (expected point_mass or uniform:<half_width>)");
}

std::string InitLaw::describe() const {
  if (kind_ == CKind::point_mass_zero) return "point_mass";
  return "uniform:" + std::to_string(half_width_);
}

double InitLaw::c_second_moment() const {
  if (kind_ == CKind::point_mass_zero) return 0.0;
  return half_width_ * half_width_ / 3.0;
}

double InitLaw::draw_c(Rng& rng) const {
  if (kind_ == CKind::point_mass_zero) return 0.0;
  return rng.uniform(-half_width_, half_width_);
}

Params init(std::size_t n, std::size_t d, const InitLaw& law, Rng& rng) {
  if (n == 0) throw ConfigError("init: unit count must be >= 1");
  if (d == 0) throw ConfigError("init: input dimension must be >= 1");
  Params p;
  p.n = n;
  p.d = d;
  p.c.resize(n);
  p.w.resize(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    p.c[i] = law.draw_c(rng);
    double* row = p.w.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) row[j] = rng.normal();
  }
  return p;
}

double forward(const Params& p, const Activation& act, std::span<const double> x) {
  if (x.size() != p.d) throw ConfigError("forward: input dimension mismatch");
  double acc = 0.0;
  const double* w = p.w.data();
  for (std::size_t i = 0; i < p.n; ++i, w += p.d) {
    double z = 0.0;
    for (std::size_t j = 0; j < p.d; ++j) z += w[j] * x[j];
    acc += p.c[i] * act.eval(z);
  }
  return acc / std::sqrt(static_cast<double>(p.n));
}

Eigen::VectorXd forward_all(const Params& p, const Activation& act, const Dataset& ds) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(ds.size()));
  for (std::size_t i = 0; i < ds.size(); ++i) {
    out[static_cast<Eigen::Index>(i)] = forward(p, act, ds[i].x);
  }
  return out;
}

double loss(const Params& p, const Activation& act, const Dataset& ds) {
  double acc = 0.0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double r = ds[i].y - forward(p, act, ds[i].x);
    acc += r * r;
  }
  return acc / static_cast<double>(ds.size());
}

CovEstimate init_output_covariance(const InitLaw& law, const Activation& act, const Dataset& ds,
                                   std::size_t n_mc, Rng& rng, std::size_t workers) {
  if (n_mc < 10000) throw ConfigError("init_output_covariance: n_mc must be >= 1e4");
  const auto m = static_cast<Eigen::Index>(ds.size());
  const double ec2 = law.c_second_moment();

  CovEstimate out;
  out.n_mc = n_mc;
  if (ec2 == 0.0) {
    // C = 0: the limit is the zero vector, a valid degenerate Gaussian.
    out.sigma = Eigen::MatrixXd::Zero(m, m);
    out.stderr_ = Eigen::MatrixXd::Zero(m, m);
    return out;
  }

  const auto moments =
      detail::mc_pair_moments(act, ds.inputs(), 0.0, rng.next_u64(), n_mc, workers);
  out.sigma = ec2 * moments.mean;
  out.stderr_ = ec2 * moments.stderr_;
  return out;
}

}  // namespace widenet
