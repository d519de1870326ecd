// Error taxonomy shared across the library: configuration errors exit the CLI
// with code 2, solver errors (state, EOS, convergence) with code 3.
#pragma once

#include <stdexcept>
#include <string>

namespace gpr1d {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
  using Error::Error;
};

struct SolverError : Error {
  using Error::Error;
};

}  // namespace gpr1d
