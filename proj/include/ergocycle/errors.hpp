#pragma once

#include <stdexcept>
#include <string>

namespace ergocycle {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: wrong dimension, empty alphabet, rejected decider input.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Operation applied outside its mathematical domain (non-unitary input,
// point without enough coordinates).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Finite digits or finite chart depth cannot certify the answer.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

// Exact representation would exceed the configured size budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The transcendental model of theta cannot decide the question.
class UndecidableInModel : public Error {
 public:
  using Error::Error;
};

}  // namespace ergocycle
