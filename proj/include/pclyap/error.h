#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pclyap {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (unknown symbol, dimension mismatch, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured size cap (subset count, word count, unknowns) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

/// Iterative numerics failed to reach a verified answer.
class NumericalFailure : public Error {
 public:
  using Error::Error;
};

/// A structural property that should hold by construction did not.
class InternalInvariant : public Error {
 public:
  using Error::Error;
};

/// Raised when a graph admits a word with no reading path.
///
/// The witness is given most-recent-symbol first: a path reading the
/// symbols in trajectory order would read `witness` back to front.
class NotPathComplete : public Error {
 public:
  explicit NotPathComplete(std::vector<std::string> witness);

  const std::vector<std::string>& witness() const { return witness_; }

 private:
  std::vector<std::string> witness_;
};

}  // namespace pclyap
