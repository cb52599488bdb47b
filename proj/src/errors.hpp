#pragma once

#include <stdexcept>
#include <string>

namespace cointoss {

// Input violates a documented precondition (bad range, step guard, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The requested quantity does not exist for this input (e.g. no nutation
// period for an axisymmetric coin).
class DegenerateInput : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The input is valid but the operation is not defined for its regime.
class UnsupportedCase : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IntegrationFailure : public std::runtime_error {
 public:
  IntegrationFailure(const std::string& what, double t)
      : std::runtime_error(what + " (t = " + std::to_string(t) + " s)"), t_(t) {}
  double time() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace cointoss
