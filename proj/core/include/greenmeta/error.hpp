#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace greenmeta {

enum class ErrorCode {
  OddPercentage,
  OutOfRange,
  FieldOutOfRange,
  Truncated,
  DimensionMismatch,
  EmptyCandidateSet,
  MissingTool,
  EmptyProfile,
  Unreachable,
  SessionEnded,
  OutOfDomain,
  TooFewKnots,
  MalformedCurve,
  NonPositiveReference,
  MisalignedMeasurements,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Domain error raised by every greenmeta operation. The code is stable and
// meant for programmatic dispatch; the message is for humans.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace greenmeta
