#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/matrix.hpp"

namespace conelab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a size/dimension cap protecting the exact kernels is exceeded.
struct CapExceeded : Error {
  using Error::Error;
};

// Raised by certification pipelines when an input cone is classical; carries
// the basis witness. Maps to exit code 2 at the CLI.
struct ClassicalInputError : Error {
  ClassicalInputError(const std::string& msg, std::vector<QVec> basis_witness)
      : Error(msg), basis(std::move(basis_witness)) {}
  std::vector<QVec> basis;
};

}  // namespace conelab
