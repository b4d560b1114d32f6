#pragma once

#include <stdexcept>
#include <string>

namespace qpcalc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed QPOT / endomorphism input. Line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Operands live over different quivers or truncation orders.
class ContextError : public Error {
 public:
  using Error::Error;
};

// A mathematical precondition does not hold (unknown arrow, out-of-range
// degree, non-invertible map, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// The truncation order is too small to certify the requested quantity.
class CertificateError : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace qpcalc
