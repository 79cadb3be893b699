#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mvml {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed formula text. `position` is the byte offset of the offending token.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        detail_(message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// A value, model, instance or argument that violates an operation's precondition.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured resource guard (branch count, carrier size, power cap) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

}  // namespace mvml
