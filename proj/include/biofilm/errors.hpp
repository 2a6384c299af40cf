#pragma once

#include <stdexcept>
#include <string>

namespace biofilm {

/// Bad argument: length mismatch, grid mismatch, out-of-range parameter.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An object was found in a state its operation cannot accept
/// (e.g. a spectral field whose coefficients lost Hermitian symmetry).
class StateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A documented precondition of a model operation was violated.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class NumericalFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedConfiguration : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace biofilm
