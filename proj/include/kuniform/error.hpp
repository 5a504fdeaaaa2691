#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kuniform {

enum class ErrorKind {
  InvalidLevel,
  LevelMismatch,
  Shape,
  UseDetPath,
  Unsupported,
  Range,
  ViolatesConditionI,
  TooLarge,
  MalformedWitness,
  PreconditionViolated,
  SearchFailed,
  FieldMismatch,
  HypothesisFailed,
  Parse,
  BudgetMalformed,
  Overflow,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidLevel: return "invalid-level";
    case ErrorKind::LevelMismatch: return "level-mismatch";
    case ErrorKind::Shape: return "shape";
    case ErrorKind::UseDetPath: return "use-det-path";
    case ErrorKind::Unsupported: return "unsupported";
    case ErrorKind::Range: return "range";
    case ErrorKind::ViolatesConditionI: return "violates-condition-i";
    case ErrorKind::TooLarge: return "too-large";
    case ErrorKind::MalformedWitness: return "malformed-witness";
    case ErrorKind::PreconditionViolated: return "precondition-violated";
    case ErrorKind::SearchFailed: return "search-failed";
    case ErrorKind::FieldMismatch: return "field-mismatch";
    case ErrorKind::HypothesisFailed: return "hypothesis-failed";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::BudgetMalformed: return "budget-malformed";
    case ErrorKind::Overflow: return "overflow";
  }
  return "unknown";
}

}  // namespace kuniform
