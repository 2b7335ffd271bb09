#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace catbn {

enum class ErrorKind {
  CycleDetected,
  UnknownNode,
  DuplicateEdge,
  SelfLoop,
  DuplicateName,
  InvalidVariable,
  InvalidCpt,
  InvalidAssignment,
  IncompleteAssignment,
  ZeroEvidence,
  SchemaMismatch,
  NonPositiveEss,
  InsufficientData,
  InvalidArgument,
  MalformedRow,
  IoError,
  UnknownCategory,
  NonMonotoneCutpoints,
  LengthMismatch,
  EmptyMatrix,
  ModelFormat,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownNode: return "UnknownNode";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::SelfLoop: return "SelfLoop";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::InvalidVariable: return "InvalidVariable";
    case ErrorKind::InvalidCpt: return "InvalidCpt";
    case ErrorKind::InvalidAssignment: return "InvalidAssignment";
    case ErrorKind::IncompleteAssignment: return "IncompleteAssignment";
    case ErrorKind::ZeroEvidence: return "ZeroEvidence";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::NonPositiveEss: return "NonPositiveEss";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::IoError: return "IoError";
    case ErrorKind::UnknownCategory: return "UnknownCategory";
    case ErrorKind::NonMonotoneCutpoints: return "NonMonotoneCutpoints";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::EmptyMatrix: return "EmptyMatrix";
    case ErrorKind::ModelFormat: return "ModelFormat";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a kind so callers (and the
/// CLI exit-code mapping) can branch without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace catbn
