#pragma once

#include <stdexcept>
#include <string>

namespace convexstate {

// A caller violated a documented precondition (wrong shape, state outside the
// theory, non-orthogonal pair where orthogonality is required, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed external input: theory files, state files, command lines.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A result that must hold mathematically failed to verify.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace convexstate
