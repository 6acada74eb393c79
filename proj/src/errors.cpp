#include "csf/errors.hpp"

namespace csf {

auto to_string(ErrorCode code) -> std::string_view {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonClosable: return "NonClosable";
    case ErrorCode::NonPositive: return "NonPositive";
    case ErrorCode::NonAncientTime: return "NonAncientTime";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::StepSizeUnderflow: return "StepSizeUnderflow";
    case ErrorCode::SelfIntersection: return "SelfIntersection";
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::BadBoundary: return "BadBoundary";
    case ErrorCode::BadInterval: return "BadInterval";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::NonPositiveValues: return "NonPositiveValues";
    case ErrorCode::WrongFrame: return "WrongFrame";
    case ErrorCode::TooFewSnapshots: return "TooFewSnapshots";
    case ErrorCode::UnknownExperiment: return "UnknownExperiment";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace csf
