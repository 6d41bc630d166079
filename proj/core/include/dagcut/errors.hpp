#pragma once

#include <stdexcept>
#include <string>

namespace dagcut {

enum class ErrorCode {
  CycleDetected,
  BadEndpoint,
  NegativeCost,
  KOutOfRange,
  ParseError,
  BadParams,
  NotBipartite,
  NotStructured,
  TooManyPaths,
  InvalidCertificate,
  DegeneratePiece,
  NumericalFailure,
  InfeasibleInput,
  InvalidArgument,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::BadEndpoint: return "BadEndpoint";
    case ErrorCode::NegativeCost: return "NegativeCost";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::NotStructured: return "NotStructured";
    case ErrorCode::TooManyPaths: return "TooManyPaths";
    case ErrorCode::InvalidCertificate: return "InvalidCertificate";
    case ErrorCode::DegeneratePiece: return "DegeneratePiece";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::InfeasibleInput: return "InfeasibleInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace dagcut
