#pragma once

#include <stdexcept>
#include <string>

namespace sphericity {

/// Argument outside the documented domain (non-finite data, bad p, bad alpha).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Too few observations for the requested estimator.
class InsufficientSample : public std::invalid_argument {
 public:
  InsufficientSample(const std::string& what, int required, int actual)
      : std::invalid_argument(what + " requires n >= " + std::to_string(required) +
                              " (got n = " + std::to_string(actual) + ")"),
        required_(required),
        actual_(actual) {}

  int required() const noexcept { return required_; }
  int actual() const noexcept { return actual_; }

 private:
  int required_;
  int actual_;
};

/// Data for which the statistic is undefined, e.g. zero total variance.
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace sphericity
