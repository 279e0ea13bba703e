#pragma once

#include <stdexcept>
#include <string>

namespace octofc {

// bad arguments: wrong dimension, point outside its slice, pole of a kernel
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// numerical precondition failed (singular operator, spectrum not enclosed, ...)
class PreconditionError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SingularityError : public PreconditionError {
public:
  SingularityError(const std::string& what, double min_sv)
      : PreconditionError(what), min_sv_(min_sv) {}
  double min_sv() const { return min_sv_; }

private:
  double min_sv_;
};

class NonPowerAssociativeError : public PreconditionError {
public:
  NonPowerAssociativeError(const std::string& what, double residual)
      : PreconditionError(what), residual_(residual) {}
  double residual() const { return residual_; }

private:
  double residual_;
};

// a computed quantity exceeded its configured tolerance
class ToleranceError : public std::runtime_error {
public:
  ToleranceError(const std::string& what, double value, double tol)
      : std::runtime_error(what), value_(value), tol_(tol) {}
  double value() const { return value_; }
  double tol() const { return tol_; }

private:
  double value_;
  double tol_;
};

}  // namespace octofc

namespace octofc {

// malformed input or configuration; location names the file/field/offset
class ConfigError : public std::invalid_argument {
public:
  ConfigError(const std::string& what, std::string location = {})
      : std::invalid_argument(what), location_(std::move(location)) {}
  const std::string& location() const { return location_; }

private:
  std::string location_;
};

}  // namespace octofc
