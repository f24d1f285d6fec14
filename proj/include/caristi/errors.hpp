#pragma once

#include <stdexcept>
#include <string>

namespace caristi {

enum class ErrorCode {
  OracleFailure,
  NotUltrametric,
  NotInDomain,
  NotMonotone,
  NotOpenPreimage,
  DivergenceBudget,
  EmptySample,
  BudgetExhausted,
  CaristiViolation,
  NoProgress,
  NestingViolation,
  TreeTooShallow,
  TableExhausted,
  StageOutOfRange,
  BadInput,
};

const char* error_code_name(ErrorCode c);

// Budget errors mean "ran out of resources before a verdict", not "claim is
// false". Reports map them to `indeterminate`; everything else is a hard fail.
bool is_budget_error(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, long long detail = -1)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        detail_(detail) {}

  ErrorCode code() const { return code_; }
  long long detail() const { return detail_; }  // budget/stage/index when meaningful
  bool budget() const { return is_budget_error(code_); }

 private:
  ErrorCode code_;
  long long detail_;
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OracleFailure: return "OracleFailure";
    case ErrorCode::NotUltrametric: return "NotUltrametric";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NotOpenPreimage: return "NotOpenPreimage";
    case ErrorCode::DivergenceBudget: return "DivergenceBudget";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::CaristiViolation: return "CaristiViolation";
    case ErrorCode::NoProgress: return "NoProgress";
    case ErrorCode::NestingViolation: return "NestingViolation";
    case ErrorCode::TreeTooShallow: return "TreeTooShallow";
    case ErrorCode::TableExhausted: return "TableExhausted";
    case ErrorCode::StageOutOfRange: return "StageOutOfRange";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Error";
}

inline bool is_budget_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotInDomain:
    case ErrorCode::DivergenceBudget:
    case ErrorCode::BudgetExhausted:
    case ErrorCode::NoProgress:
    case ErrorCode::TreeTooShallow:
    case ErrorCode::TableExhausted:
      return true;
    default:
      return false;
  }
}

}  // namespace caristi
