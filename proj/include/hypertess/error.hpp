#pragma once

#include <stdexcept>
#include <string>

namespace hypertess {

enum class ErrorKind {
  InvalidDimension,
  DimensionMismatch,
  LengthMismatch,
  DegenerateInput,
  EmptyInput,
  NotCovered,
  InsufficientTrials,
  InvalidModel,
  Precondition,
  NormalizationRequired,
  InvalidArgument,
  Io,
  Format,
};

const char* to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidDimension: return "invalid dimension";
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::LengthMismatch: return "length mismatch";
    case ErrorKind::DegenerateInput: return "degenerate input";
    case ErrorKind::EmptyInput: return "empty input";
    case ErrorKind::NotCovered: return "not covered";
    case ErrorKind::InsufficientTrials: return "insufficient trials";
    case ErrorKind::InvalidModel: return "invalid model";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::NormalizationRequired: return "normalization required";
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::Io: return "io error";
    case ErrorKind::Format: return "format error";
  }
  return "error";
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace hypertess
