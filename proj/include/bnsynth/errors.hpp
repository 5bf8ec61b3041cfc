#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bnsynth {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed expression text. `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(std::string identifier)
      : Error("unknown identifier '" + identifier + "'"),
        identifier_(std::move(identifier)) {}
  const std::string& identifier() const noexcept { return identifier_; }

 private:
  std::string identifier_;
};

/// Ill-formed interconnection, unknown subsystem, illegal deletion.
class NetworkError : public Error {
 public:
  using Error::Error;
};

/// Bad input file contents (structure, names, duplicates).
class InputError : public Error {
 public:
  using Error::Error;
};

class UnrealizableError : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace bnsynth
