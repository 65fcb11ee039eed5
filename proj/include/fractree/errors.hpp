#pragma once

#include <stdexcept>

namespace fractree {

// Bad arguments, out-of-domain values, malformed files. CLI exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Solver or iteration failures. CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}
