#pragma once

#include <stdexcept>
#include <string>

namespace mdent {

// Invariant failure on a constructed value (norm, Hermiticity, trace, positivity).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed text input; line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace mdent
