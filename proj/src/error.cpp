#include "lpeval/error.hpp"

namespace lpeval {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kOutOfRange: return "out-of-range";
    case ErrorKind::kContractViolation: return "contract-violation";
    case ErrorKind::kEmptyPositives: return "empty-positives";
    case ErrorKind::kExhausted: return "exhausted";
    case ErrorKind::kEmptyCell: return "empty-cell";
    case ErrorKind::kNonConvergence: return "non-convergence";
    case ErrorKind::kNumerical: return "numerical";
    case ErrorKind::kStratification: return "stratification";
    case ErrorKind::kSingleClass: return "single-class";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kNotImplemented: return "not-implemented";
    case ErrorKind::kIo: return "io";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + message), line_(line) {}

}  // namespace lpeval
