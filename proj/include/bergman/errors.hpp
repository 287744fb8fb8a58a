#pragma once

#include <stdexcept>
#include <string>

namespace bergman {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A point lies outside the domain, or outside the region where truncated
// kernels are admissible.
class DomainError : public Error {
public:
  using Error::Error;
};

// A parameter violates an operation's precondition.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Two objects that must share a space, grid or shape do not.
class MismatchError : public Error {
public:
  using Error::Error;
};

// An integral fails the integrability pre-check.
class DivergenceError : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

} // namespace bergman
