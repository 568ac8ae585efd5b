#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ptslab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text. Positions are 1-based.
struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct MalformedStructure : Error {
  using Error::Error;
};

struct MissingMapping : Error {
  using Error::Error;
};

struct ConclusionMismatch : Error {
  using Error::Error;
};

struct AssumptionEscape : Error {
  using Error::Error;
};

/// A justification produced an output that breaks the same-conclusion /
/// no-new-assumptions contract.
struct ContractViolation : Error {
  using Error::Error;
};

struct InconsistentBase : Error {
  using Error::Error;
};

/// An enumeration or search would exceed a configured cap.
struct ResourceError : Error {
  using Error::Error;
};

}  // namespace ptslab
