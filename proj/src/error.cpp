#include "nestkit/error.hpp"

namespace nestkit {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::InvalidGenerators: return "InvalidGenerators";
    case ErrorKind::InvalidTable: return "InvalidTable";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::PrimeSearchFailed: return "PrimeSearchFailed";
    case ErrorKind::AbelianInput: return "AbelianInput";
    case ErrorKind::RouteDisagreement: return "RouteDisagreement";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::UnsupportedField: return "UnsupportedField";
    case ErrorKind::UnknownFamily: return "UnknownFamily";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::LatticeTooLarge: return "LatticeTooLarge";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorKind::ParseError,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

}  // namespace nestkit
