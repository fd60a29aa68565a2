#pragma once

#include <stdexcept>
#include <string>

namespace ymt {

/// Malformed or mismatched input (dimensions, lattices, unknown keys).
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

/// Principal matrix logarithm requested outside its injectivity radius.
class SingularityError : public PreconditionError {
 public:
  explicit SingularityError(const std::string& what) : PreconditionError(what) {}
};

/// A constructed object failed its own invariant check.
class VerificationError : public std::runtime_error {
 public:
  explicit VerificationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ymt
