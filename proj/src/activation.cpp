#include "widenet/activation.hpp"

#include <cmath>

#include "widenet/errors.hpp"

namespace widenet {

namespace {

double tanh_eval(double z) { return std::tanh(z); }
double tanh_d1(double z) {
  const double t = std::tanh(z);
  return 1.0 - t * t;
}
double tanh_d2(double z) {
  const double t = std::tanh(z);
  return -2.0 * t * (1.0 - t * t);
}

double sigmoid_eval(double z) { return 1.0 / (1.0 + std::exp(-z)); }
double sigmoid_d1(double z) {
  const double s = sigmoid_eval(z);
  return s * (1.0 - s);
}
double sigmoid_d2(double z) {
  const double s = sigmoid_eval(z);
  return s * (1.0 - s) * (1.0 - 2.0 * s);
}

// sup|tanh''| = 4/(3 sqrt 3), sup|sigmoid''| = 1/(6 sqrt 3); stored with one
// ulp of headroom so the evaluated functions never exceed them.
constexpr double kTanhD2Bound = 0.7698003589195012;
constexpr double kSigmoidD2Bound = 0.09622504486493765;

}  // namespace

Activation make_activation(std::string_view name) {
  if (name == "tanh") {
    return Activation{"tanh", tanh_eval, tanh_d1, tanh_d2, 1.0, 1.0, kTanhD2Bound};
  }
  if (name == "sigmoid") {
    return Activation{"sigmoid", sigmoid_eval, sigmoid_d1, sigmoid_d2, 1.0, 0.25, kSigmoidD2Bound};
  }
  std::string valid;
  for (const auto& n : activation_names()) {
    if (!valid.empty()) valid += ", ";
    valid += n;
  }
  throw ConfigError("unknown activation '" + std::string(name) + "' (valid: " + valid +
                    "; unbounded activations such as relu are not admissible)");
}

const std::vector<std::string>& activation_names() {
  static const std::vector<std::string> names = {"tanh", "sigmoid"};
  return names;
}

}  // namespace widenet
