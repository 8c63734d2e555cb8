#pragma once

#include <stdexcept>
#include <string>

namespace nv {

/// Stable error codes. The numeric values are part of the C API.
enum class ErrorCode : int {
  kOk = 0,
  kRectNotInPattern = 1,
  kPrefixTooShort = 2,
  kStripNotFound = 3,
  kRectNotInRange = 4,
  kNotRealizable = 5,
  kBudgetExceeded = 6,
  kMalformedWord = 7,
  kParseError = 8,
  kInvalidElement = 9,
  kDuplicateSymbol = 10,
  kUnknownSymbol = 11,
  kIndexOutOfRange = 12,
  kResourceBudgetExceeded = 13,
  kNotWithinRadius = 14,
  kPreconditionViolated = 15,
  kEssentialityLost = 16,
  kNoEssentialOrigin = 17,
  kDecompositionUnavailable = 18,
  kNoIdentityHalf = 19,
  kIncompleteTable = 20,
  kInvalidArgument = 21,
};

const char* error_code_name(ErrorCode code) noexcept;

/// True for the errors the CLI reports with the "budget" exit status.
bool is_budget_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nv
