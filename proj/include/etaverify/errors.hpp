#pragma once

#include <stdexcept>

namespace etaverify {

/// A series or quadrature exhausted its term/evaluation budget before its
/// certified error bound reached the requested tolerance.
class NonConvergence : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's precondition domain.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// b = c = 0 in the A/B machinery.
class DegenerateInput : public DomainError {
 public:
  using DomainError::DomainError;
};

}  // namespace etaverify
