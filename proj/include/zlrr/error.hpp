#pragma once

#include <stdexcept>
#include <string>

namespace zlrr {

enum class ErrorCode {
    NonZeroLeadingCoefficient,
    ZeroTrailingCoefficient,
    BadInitialTerms,
    TableTooSmall,
    BudgetExceeded,
    WrongSpecShape,
    EmptyDistribution,
    DegenerateDistribution,
    TooFewPoints,
    TooFewBins,
    EmptyInterval,
    NoDominantRoot,
    AmbiguousDominance,
    NoConvergence,
    MissingInput,
};

const char* error_code_name(ErrorCode code);

/// Single exception type for all library failures. The code tells callers
/// (and the CLI exit-code mapping) what class of failure occurred.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace zlrr
