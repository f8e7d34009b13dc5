#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rainbow {

enum class ErrorCode {
  InvalidGraph,
  InvalidProbability,
  OddDegreeSum,
  InvalidRootCount,
  EmptyCore,
  EdgeNotInForest,
  TooLarge,
  InvalidDelta,
  InvalidEpsilon,
  InvalidConfig,
  NotFound,
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::OddDegreeSum: return "OddDegreeSum";
    case ErrorCode::InvalidRootCount: return "InvalidRootCount";
    case ErrorCode::EmptyCore: return "EmptyCore";
    case ErrorCode::EdgeNotInForest: return "EdgeNotInForest";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidDelta: return "InvalidDelta";
    case ErrorCode::InvalidEpsilon: return "InvalidEpsilon";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Library error; `code()` identifies the failed precondition.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace rainbow
