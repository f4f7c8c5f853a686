#pragma once

#include <stdexcept>
#include <string>

namespace maxsurf {

enum class ErrorCode {
  UnitModulusInput,
  NotAnIsometry,
  UnsupportedGroup,
  NotFreeProper,
  PoleHit,
  OffCurve,
  BranchTooClose,
  ContinuationAmbiguous,
  RootFindingFailed,
  PoleOnPath,
  ToleranceNotReached,
  NotClosed,
  EnclosureViolation,
  Unroutable,
  NotUnitModulus,
  WindingUnstable,
  AnnulusContaminated,
  NonSimpleScherkPole,
  ResidueImbalance,
  OddVl,
  RankMismatch,
  ParamOutOfRange,
  SymmetryFailed,
  MeshDegenerate,
  IoError,
  ParseError,
};

const char* error_name(ErrorCode code);

/// Library-wide exception carrying a machine-checkable code plus a message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace maxsurf
