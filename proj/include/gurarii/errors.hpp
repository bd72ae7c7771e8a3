#pragma once

#include <stdexcept>
#include <string>

namespace gurarii {

/// Operand shapes do not agree (vector length, matrix size, space dimension).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A ball description whose gauge is not a norm (unbounded or not spanning).
class NotANorm : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A named mathematical precondition failed. The message names the bound.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The configured dimension cap would be exceeded.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (rationals, JSON documents).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gurarii
