#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gmcdm {

enum class ErrorCode {
  NonCrispCell,
  AllZeroWeights,
  DimensionMismatch,
  BadThresholds,
  BadLambda,
  NonIfsCell,
  OutOfRange,
  BadRange,
  NonStochasticCell,
  UnknownObject,
  MixedCellKinds,
  NotSameSet,
  WeightOutOfRange,
  UnknownCriterion,
  UnknownMethod,
  MethodInapplicable,
  ValidationFailed,
  DuplicateId,
  IoFailure,
  IllegalTransition,
  UnknownRecord,
  ParseError,
  MissingCell,
  MissingSortingTable,
  BadUtility,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonCrispCell: return "NON_CRISP_CELL";
    case ErrorCode::AllZeroWeights: return "ALL_ZERO_WEIGHTS";
    case ErrorCode::DimensionMismatch: return "DIMENSION_MISMATCH";
    case ErrorCode::BadThresholds: return "BAD_THRESHOLDS";
    case ErrorCode::BadLambda: return "BAD_LAMBDA";
    case ErrorCode::NonIfsCell: return "NON_IFS_CELL";
    case ErrorCode::OutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::BadRange: return "BAD_RANGE";
    case ErrorCode::NonStochasticCell: return "NON_STOCHASTIC_CELL";
    case ErrorCode::UnknownObject: return "UNKNOWN_OBJECT";
    case ErrorCode::MixedCellKinds: return "MIXED_CELL_KINDS";
    case ErrorCode::NotSameSet: return "NOT_SAME_SET";
    case ErrorCode::WeightOutOfRange: return "WEIGHT_OUT_OF_RANGE";
    case ErrorCode::UnknownCriterion: return "UNKNOWN_CRITERION";
    case ErrorCode::UnknownMethod: return "UNKNOWN_METHOD";
    case ErrorCode::MethodInapplicable: return "METHOD_INAPPLICABLE";
    case ErrorCode::ValidationFailed: return "VALIDATION_FAILED";
    case ErrorCode::DuplicateId: return "DUPLICATE_ID";
    case ErrorCode::IoFailure: return "IO_FAILURE";
    case ErrorCode::IllegalTransition: return "ILLEGAL_TRANSITION";
    case ErrorCode::UnknownRecord: return "UNKNOWN_RECORD";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::MissingCell: return "MISSING_CELL";
    case ErrorCode::MissingSortingTable: return "MISSING_SORTING_TABLE";
    case ErrorCode::BadUtility: return "BAD_UTILITY";
  }
  return "UNKNOWN";
}

// Every engine failure is reported through this one exception type; callers
// branch on code(), the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gmcdm
