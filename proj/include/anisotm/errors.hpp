#pragma once

#include <stdexcept>
#include <string>

namespace anisotm {

// Bad user input: malformed specs, parameters out of range.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested (domain, gauge, dimension) combination is not supported.
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative procedure failed to reach its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace anisotm
