#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace csf {

enum class ErrorCode {
  InvalidArgument,
  NonClosable,
  NonPositive,
  NonAncientTime,
  DegenerateSegment,
  StepSizeUnderflow,
  SelfIntersection,
  AllZero,
  EmptyTrajectory,
  BadBoundary,
  BadInterval,
  GridTooCoarse,
  NonPositiveValues,
  WrongFrame,
  TooFewSnapshots,
  UnknownExperiment,
  ConfigInvalid,
  Io,
};

auto to_string(ErrorCode code) -> std::string_view;

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can branch on the kind without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] auto code() const noexcept -> ErrorCode { return code_; }
  /// The message without the code prefix.
  [[nodiscard]] auto detail() const noexcept -> const std::string& { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace csf
