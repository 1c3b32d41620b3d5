#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bmcheck {

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class SingularCovariance : public Error {
 public:
  using Error::Error;
};

class NotDifferentiableHere : public Error {
 public:
  using Error::Error;
};

class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class DegenerateDesign : public Error {
 public:
  using Error::Error;
};

class WindowNotOnGrid : public Error {
 public:
  using Error::Error;
};

class HaloOutsideEvaluationDomain : public Error {
 public:
  using Error::Error;
};

class DisconnectedMask : public Error {
 public:
  using Error::Error;
};

class UnsupportedFormat : public Error {
 public:
  using Error::Error;
};

/// One or more component tests of a suite failed to run; the message lists
/// each component with its error.
class SuiteError : public Error {
 public:
  using Error::Error;
};

/// Configuration rejected; carries one message per offending field.
class ConfigInvalid : public Error {
 public:
  explicit ConfigInvalid(std::vector<std::string> field_errors);

  const std::vector<std::string>& field_errors() const { return field_errors_; }

 private:
  std::vector<std::string> field_errors_;
};

inline ConfigInvalid::ConfigInvalid(std::vector<std::string> field_errors)
    : Error([&] {
        std::string msg = "invalid configuration";
        for (const auto& e : field_errors) msg += "\n  " + e;
        return msg;
      }()),
      field_errors_(std::move(field_errors)) {}

}  // namespace bmcheck
