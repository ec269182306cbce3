#pragma once

#include <stdexcept>
#include <string>

namespace wm {

/// A hypothesis of the requested check does not hold (unequal totals,
/// length mismatch, inputs out of order).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain of a function or factory.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Something the theory says cannot happen did happen.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Enumeration would exceed the configured cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed model or input data (sites, couplings, measure literals).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace wm
