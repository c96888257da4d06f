#include "greenmeta/error.hpp"

namespace greenmeta {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddPercentage: return "OddPercentage";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::FieldOutOfRange: return "FieldOutOfRange";
    case ErrorCode::Truncated: return "Truncated";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::EmptyCandidateSet: return "EmptyCandidateSet";
    case ErrorCode::MissingTool: return "MissingTool";
    case ErrorCode::EmptyProfile: return "EmptyProfile";
    case ErrorCode::Unreachable: return "Unreachable";
    case ErrorCode::SessionEnded: return "SessionEnded";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::TooFewKnots: return "TooFewKnots";
    case ErrorCode::MalformedCurve: return "MalformedCurve";
    case ErrorCode::NonPositiveReference: return "NonPositiveReference";
    case ErrorCode::MisalignedMeasurements: return "MisalignedMeasurements";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace greenmeta
