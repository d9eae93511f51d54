#pragma once

#include <stdexcept>
#include <string>

namespace bdqn {

// Bad or inconsistent configuration: dimension mismatches, out-of-range
// hyperparameters, unknown config keys.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shapes of two objects that must agree do not.
class DimensionError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// API called in the wrong state (e.g. stepping a finished episode).
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A value violates its type invariants (e.g. a malformed Transition).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Broken internal contract, e.g. a forward cache that does not match the
// parameters passed to backward.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed or incompatible file (checkpoint, metrics, config syntax).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bdqn
