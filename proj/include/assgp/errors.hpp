#pragma once

#include <stdexcept>
#include <string>

namespace assgp {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input values: unregistered generators, words over the wrong
// alphabet, bad JSON payloads.
class ValidationError : public Error {
public:
  using Error::Error;
};

// Operation called outside its mathematical domain (e.g. cyclic root of e).
class DomainError : public Error {
public:
  using Error::Error;
};

// Text that failed to parse; carries the offending position.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

}  // namespace assgp
