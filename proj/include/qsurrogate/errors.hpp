#pragma once

#include <stdexcept>
#include <string>

namespace qsur {

/// Malformed input: wrong lengths, out-of-range indices, non-Hermitian matrices.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input is well-formed but exceeds a hard size guard (qubit count, 4^n blowup).
class SizeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A linear solve or numeric postcondition failed.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsur
