#pragma once

#include <stdexcept>
#include <string>

namespace plauslab {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arity clash or predicate/function namespace overlap.
class ArityError : public ParseError {
 public:
  using ParseError::ParseError;
};

// A model, poset, order or measure that breaks its own invariants.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Something exceeds a hard size cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SubstitutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SideConditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace plauslab
