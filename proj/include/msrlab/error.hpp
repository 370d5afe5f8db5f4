#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace msrlab {

enum class ErrorKind {
  NonPrimeCharacteristic,
  ReduciblePolynomial,
  MissingReduction,
  InvalidReduction,
  FieldTooLarge,
  FieldMismatch,
  SingularMatrix,
  AmbientMismatch,
  DimensionMismatch,
  ShapeMismatch,
  TooManySubsets,
  SingularSystem,
  SchemeInvalid,
  InconsistentNodeData,
  RequiresTwoParities,
  SingularEncodingMatrix,
  IndexOutOfRange,
  OverlappingSets,
  PairsNotComplementary,
  PairsOverlap,
  IndexClash,
  HypothesisViolated,
  PartitionInvalid,
  SumNotFull,
  UnequalParts,
  TooLarge,
  IndependenceFailure,
  ConditionsViolated,
  NonPowerOfTwo,
  InvalidParams,
  BoundViolated,
  NoSchemeExists,
  BudgetExhausted,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::MissingReduction: return "MissingReduction";
    case ErrorKind::InvalidReduction: return "InvalidReduction";
    case ErrorKind::FieldTooLarge: return "FieldTooLarge";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::AmbientMismatch: return "AmbientMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::TooManySubsets: return "TooManySubsets";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::SchemeInvalid: return "SchemeInvalid";
    case ErrorKind::InconsistentNodeData: return "InconsistentNodeData";
    case ErrorKind::RequiresTwoParities: return "RequiresTwoParities";
    case ErrorKind::SingularEncodingMatrix: return "SingularEncodingMatrix";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::OverlappingSets: return "OverlappingSets";
    case ErrorKind::PairsNotComplementary: return "PairsNotComplementary";
    case ErrorKind::PairsOverlap: return "PairsOverlap";
    case ErrorKind::IndexClash: return "IndexClash";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::PartitionInvalid: return "PartitionInvalid";
    case ErrorKind::SumNotFull: return "SumNotFull";
    case ErrorKind::UnequalParts: return "UnequalParts";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::IndependenceFailure: return "IndependenceFailure";
    case ErrorKind::ConditionsViolated: return "ConditionsViolated";
    case ErrorKind::NonPowerOfTwo: return "NonPowerOfTwo";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::NoSchemeExists: return "NoSchemeExists";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure in the library is reported as an Error carrying a kind.
/// `payload` holds serialized context (e.g. a counterexample family as JSON)
/// when the failure must not be discarded.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what, std::string payload = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind),
        payload_(std::move(payload)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& payload() const noexcept { return payload_; }

 private:
  ErrorKind kind_;
  std::string payload_;
};

}  // namespace msrlab
