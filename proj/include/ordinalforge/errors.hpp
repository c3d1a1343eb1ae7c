#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ordinalforge {

// User-level failures: malformed input, out-of-domain arguments, exceeded
// budgets. The CLI maps these to exit code 1.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  std::size_t position;
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at offset " + std::to_string(pos)), position(pos) {}
};

// Duplicate positions and similar structural violations of array invariants.
struct WellFormednessError : Error {
  using Error::Error;
};

// Requested b(X)/b-bar(X) of the empty array.
struct EmptyArrayError : Error {
  using Error::Error;
};

// Erasing zero entries produced two entries with equal positions.
struct CollisionError : Error {
  using Error::Error;
};

// The maximal (or minimal) position of an array is semantically tied between
// structurally distinct entries, so the comparison walk is not well defined.
struct AmbiguityError : Error {
  using Error::Error;
};

struct NonStandardError : Error {
  using Error::Error;
};

struct NotOneRowError : Error {
  using Error::Error;
};

struct NotALimitError : Error {
  using Error::Error;
};

struct UnderflowError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct CapExceededError : Error {
  using Error::Error;
};

struct FsUnavailableError : Error {
  using Error::Error;
};

// Broken internal invariant: a state the definitions say is unreachable.
// The CLI maps these to exit code 2.
struct InvariantError : std::logic_error {
  explicit InvariantError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace ordinalforge
