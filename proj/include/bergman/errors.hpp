#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

/// Raised when a function receives arguments outside its domain
/// (length mismatches, non-unitary matrices, symbols violating their
/// declared invariance, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for invalid numerical configuration (lambda <= -1, zero node
/// counts) and malformed run configurations.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bergman
