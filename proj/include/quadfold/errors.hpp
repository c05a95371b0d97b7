#pragma once

#include <stdexcept>
#include <string>

namespace quadfold {

enum class ErrorCode {
  InvalidSectorAngles,
  OutOfDomain,
  WrongClass,
  DegenerateVertex,
  NotDrivable,
  MonotonicityViolation,
  InvalidAngle,
  ValidationFailed,
  EmptyInterval,
  IncompatibleUnits,
  LayoutFailure,
  PropagationConflict,
  ClosureViolation,
  RigidityViolation,
  SerializationError,
  ConfigError,
  Usage,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}
  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace quadfold
