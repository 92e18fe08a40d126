#pragma once

#include <stdexcept>
#include <string>

namespace concav {

enum class ErrorKind {
  kInvalidInput,
  kDegeneratePair,
  kUnsupportedOperation,
  kNumericalFailure,
  kIo,
};

/// Base exception for everything raised by the library. The kind lets the
/// CLI map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::kInvalidInput, what) {}
};

class DegeneratePair : public Error {
 public:
  explicit DegeneratePair(const std::string& what)
      : Error(ErrorKind::kDegeneratePair, what) {}
};

class UnsupportedOperation : public Error {
 public:
  explicit UnsupportedOperation(const std::string& what)
      : Error(ErrorKind::kUnsupportedOperation, what) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(ErrorKind::kNumericalFailure, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::kIo, what) {}
};

}  // namespace concav
