#pragma once

#include <stdexcept>
#include <string>

namespace qforms {

// Bad arguments: non-prime characteristic, singular input, mismatched fields.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DivisionByZero : public DomainError {
 public:
  DivisionByZero() : DomainError("division by zero in finite field") {}
};

class SingularMatrix : public DomainError {
 public:
  explicit SingularMatrix(const std::string& what) : DomainError(what) {}
};

// A request is well-formed but exceeds a configured desk-scale cap.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exact self-check failed (non-integral Burnside quotient, negative
// difference, class sizes not summing to the group order, ...).
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace qforms
