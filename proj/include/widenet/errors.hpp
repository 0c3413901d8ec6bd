#pragma once

#include <stdexcept>

namespace widenet {

// Invalid configuration, option or input file. The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Numerical failure at runtime (overflow, non-finite state).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace widenet
