#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hetnet {

enum class ErrorCode {
  DiagonalNonzero,
  DimensionTooSmall,
  DimensionMismatch,
  NonPositiveParameter,
  NonPositiveInput,
  NegativeCoordinate,
  AlreadyLV,
  IndexOutOfRange,
  InadmissibleInitialCondition,
  InvalidOptions,
  NoConnection,
  NoEvents,
  TooFewEpisodes,
  WrongDimension,
  TrajectoryTooShort,
  SamplingFailed,
  AllTrajectoriesFailed,
  UnknownPreset,
  UnknownTarget,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hetnet
