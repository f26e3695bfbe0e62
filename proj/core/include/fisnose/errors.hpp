#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fisnose {

// Bad dimensions, out-of-range arguments and config values are reported as
// std::invalid_argument. The two types below cover the remaining cases.

/// A model whose parameters violate the rule-base invariants (non-positive
/// widths, non-finite entries).
class InvalidModel : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed text input. `line()` is 1-based; 0 means the error is not tied
/// to a particular line (e.g. an unreadable file).
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fisnose
