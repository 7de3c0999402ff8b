#pragma once

#include <stdexcept>
#include <string>

namespace woms {

/// An argument lies outside the mathematical domain of a function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An experiment or walk configuration is invalid. The message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A walk exceeded its step cap. The theory says N is a.s. finite, so this
/// is reported rather than truncated.
class StepCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace woms
