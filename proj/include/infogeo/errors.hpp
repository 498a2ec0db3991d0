#pragma once

#include <stdexcept>
#include <string>

namespace infogeo {

/// Input outside the domain of an operation (bad probability, negative shift, malformed state...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested work exceeds a hard enumeration bound.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Singular or numerically degenerate spectrum / matrix.
class DegeneracyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative routine failed to converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gradient flow diverged.
class InstabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Golden file or report schema does not match the expected columns.
class SchemaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sweep configuration failed; the message names the offending record.
class SweepError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace infogeo
