#pragma once

#include <stdexcept>
#include <string>

namespace pbench {

// Base class for all library errors so callers can catch pbench failures
// without swallowing unrelated std exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Operands disagree on qubit count.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// An argument is outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A layout or circuit violates a structural invariant; the message names it.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A request exceeds a hard resource limit (dense qubit cap, term caps, ...).
class CapacityError : public Error {
 public:
  using Error::Error;
};

// A circuit was handed to an engine that cannot represent it
// (e.g. non-Clifford angles on the stabilizer engine).
class EngineMismatchError : public Error {
 public:
  using Error::Error;
};

// A least-squares fit cannot be performed on the given records.
class FitError : public Error {
 public:
  using Error::Error;
};

// ideal expectation too close to zero to normalize against.
class DegenerateIdealError : public Error {
 public:
  using Error::Error;
};

}  // namespace pbench
