#pragma once

#include <stdexcept>
#include <string>

namespace vqe {

/// Operand shapes disagree (qubit counts, parameter lengths, state sizes).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A dense representation would exceed the memory guard.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Invalid or inconsistent configuration; reported before any run starts.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The requested algorithm or feature is not implemented.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading or writing a file failed; the message names the path.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace vqe
