#pragma once

#include <stdexcept>
#include <string>

namespace nilgcs {

/// Base of every error raised by the library. The CLI maps the subclasses
/// onto its exit codes (input errors vs. internal invariant violations).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input; `position` is a 0-based character offset.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

/// Input documents of the wrong shape (JSON structure, missing files).
class InputError : public Error {
public:
  using Error::Error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// Structure constants that violate the Jacobi identity.
class NotALieAlgebra : public Error {
public:
  NotALieAlgebra(const std::string& what, int i, int j, int k)
      : Error(what), triple_{i, j, k} {}
  const int* triple() const noexcept { return triple_; }

private:
  int triple_[3];
};

/// A matrix that fails J^2 = -1 or pairing preservation.
class NotAlmostGcs : public Error {
public:
  using Error::Error;
};

/// Caller violated a documented precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

/// A theorem-backed identity failed: indicates a bug, never bad input.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

}  // namespace nilgcs
