#include "nv/error.hpp"

namespace nv {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kRectNotInPattern: return "RectNotInPattern";
    case ErrorCode::kPrefixTooShort: return "PrefixTooShort";
    case ErrorCode::kStripNotFound: return "StripNotFound";
    case ErrorCode::kRectNotInRange: return "RectNotInRange";
    case ErrorCode::kNotRealizable: return "NotRealizable";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kMalformedWord: return "MalformedWord";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kInvalidElement: return "InvalidElement";
    case ErrorCode::kDuplicateSymbol: return "DuplicateSymbol";
    case ErrorCode::kUnknownSymbol: return "UnknownSymbol";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::kNotWithinRadius: return "NotWithinRadius";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kEssentialityLost: return "EssentialityLost";
    case ErrorCode::kNoEssentialOrigin: return "NoEssentialOrigin";
    case ErrorCode::kDecompositionUnavailable: return "DecompositionUnavailable";
    case ErrorCode::kNoIdentityHalf: return "NoIdentityHalf";
    case ErrorCode::kIncompleteTable: return "IncompleteTable";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_budget_error(ErrorCode code) noexcept {
  return code == ErrorCode::kBudgetExceeded || code == ErrorCode::kResourceBudgetExceeded ||
         code == ErrorCode::kNotWithinRadius;
}

}  // namespace nv
