#pragma once

#include <stdexcept>
#include <string>

namespace dualitykit {

/// Argument outside the domain of an operation (element not in the group,
/// malformed spec string, mismatched dimensions).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition does not hold (degenerate bicharacter, odd chain
/// length for the duality MPO, non-associative ring, ...).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The dense dimension |A|^L exceeds the configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal consistency check failed (non-commutative convolution algebra,
/// non-Hermitian Hamiltonian assembly). Signals a construction bug.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dualitykit
