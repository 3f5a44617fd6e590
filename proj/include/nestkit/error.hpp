#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nestkit {

enum class ErrorKind {
  OrderCapExceeded,
  InvalidGenerators,
  InvalidTable,
  NotNormal,
  ParseError,
  PrimeSearchFailed,
  AbelianInput,
  RouteDisagreement,
  HypothesisViolated,
  UnsupportedField,
  UnknownFamily,
  PreconditionViolated,
  LatticeTooLarge,
  Internal,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace nestkit
