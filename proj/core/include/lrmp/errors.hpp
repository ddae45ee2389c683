#pragma once

#include <stdexcept>
#include <string>

namespace lrmp {

// Base of everything thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something that violates an operation's precondition.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidLatticeError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class EmptyDepartureError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class SelfMoveError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class PreconditionError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DimensionMismatchError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class WrongVariantError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// The input is well formed but the requested computation cannot be carried
// out on it (reducible chain, state space over the size cap).
class StructuralError : public Error {
 public:
  using Error::Error;
};

class ReducibleError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

class CapacityError : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

}  // namespace lrmp
