#pragma once

#include <stdexcept>
#include <string>

namespace netpolicy {

/// Raised when caller-supplied data violates an operation's preconditions.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a file cannot be parsed; the message names row and column.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace netpolicy
