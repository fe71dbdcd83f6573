#pragma once

#include <stdexcept>
#include <string>

namespace wordperc {

// Bad argument or precondition violation at an API boundary.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration refused because the instance is too large.
class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The sampled window does not cover what a procedure needs to look at.
class WindowTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A seed chain is shorter than the word prefix it has to carry.
class InsufficientChain : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The word-path construction ran into a vertex it had already used.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace wordperc
