#pragma once

#include <stdexcept>
#include <string>

namespace orbiproj {

enum class ErrorCode {
  NonCollinear,
  NonConcurrent,
  Degenerate,
  IncidentCenter,
  BadOrder,
  CoincidentArguments,
  DegenerateLocus,
  NonSpacelike,
  DomainViolation,
  NonNegativeEuler,
  WrongBoundaryKind,
  MissingComponent,
  InvariantOutOfRegion,
  TwoOrderTwoCones,
  FiberArityMismatch,
  ConvexityFailure,
  BadCrossRatio,
  ConstraintViolated,
  BadParameter,
  BothOrdersTwo,
  MalformedStructure,
  InvariantMismatch,
  OrientationClash,
  NotHyperbolic,
  NegativeEigenvalues,
  NotPurelyHyperbolic,
  ChartFailure,
  ExplosionLimit,
  BadInput,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace orbiproj
