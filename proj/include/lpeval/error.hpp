#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lpeval {

enum class ErrorKind {
  kEmptyInput,
  kParse,
  kInvalidArgument,
  kOutOfRange,
  kContractViolation,
  kEmptyPositives,
  kExhausted,
  kEmptyCell,
  kNonConvergence,
  kNumerical,
  kStratification,
  kSingleClass,
  kDegenerate,
  kNotImplemented,
  kIo,
  kConfig,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers (the
/// pipeline in particular) can record it against a cell and continue.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace lpeval
