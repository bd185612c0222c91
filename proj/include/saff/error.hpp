#pragma once

#include <stdexcept>
#include <string>

namespace saff {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-range input (wrong dimensions, bad symbols, non-finite entries).
class InputError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its domain (e.g. non-contractive maps where contractions are required).
class PreconditionError : public InputError {
 public:
  using InputError::InputError;
};

/// The requested enumeration exceeds the configured word budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A quantity is numerically undefined (singular matrix, vanishing spectral radius).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

}  // namespace saff
