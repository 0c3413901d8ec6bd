#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace widenet {

// A C^2_b activation with first and second derivatives and their suprema.
// The bounds feed the runtime boundedness monitors. Plain function pointers
// keep the training loop free of std::function dispatch.
struct Activation {
  std::string name;
  double (*eval)(double);
  double (*d1)(double);
  double (*d2)(double);
  double eval_bound;
  double d1_bound;
  double d2_bound;
};

// Catalog lookup, tanh or sigmoid. Unknown names (including unbounded
// activations such as relu) raise a configuration error listing the valid
// choices.
Activation make_activation(std::string_view name);

const std::vector<std::string>& activation_names();

}  // namespace widenet
