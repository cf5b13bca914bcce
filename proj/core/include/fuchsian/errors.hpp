#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fuchsian {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed text input; offset is the byte position of the problem.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset)
      : Error(msg + " at byte " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct PreconditionError : Error {
  using Error::Error;
};

struct NotFuchsianError : PreconditionError {
  using PreconditionError::PreconditionError;
};

struct IsomorphicInputsError : Error {
  using Error::Error;
};

// Work would exceed a configured size limit (group too large, overflow, ...).
struct CapacityError : Error {
  using Error::Error;
};

// A prime-power scan ran past its ceiling without success.
struct ScanCapError : CapacityError {
  ScanCapError(const std::string& msg, std::uint64_t ceiling)
      : CapacityError(msg + " (scan ceiling " + std::to_string(ceiling) + ")"),
        ceiling(ceiling) {}
  std::uint64_t ceiling;
};

// Inputs were individually valid but mutually inconsistent.
struct InconsistencyError : Error {
  using Error::Error;
};

// A search that a theorem guarantees to succeed came up empty. Means a bug.
struct InternalContradiction : Error {
  using Error::Error;
};

}  // namespace fuchsian
