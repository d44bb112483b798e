#pragma once

#include <stdexcept>
#include <string>

namespace sflow {

// Precondition or domain violation (bad argument, point outside a map's domain).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed textual input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured budget (roof crossings, integer range, search size) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coded word or sequence failed a structural check of the decoder.
class DecodeError : public std::runtime_error {
 public:
  DecodeError(std::string constraint, const std::string& detail)
      : std::runtime_error(constraint + ": " + detail), constraint_(std::move(constraint)) {}

  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string constraint_;
};

}  // namespace sflow
