#pragma once

#include <stdexcept>
#include <string>

namespace ultramorse {

/// Parse failure with 1-based line/column diagnostics. All text front ends
/// (series expressions, functional expressions, polynomials, config files)
/// throw this so the CLI can print a uniform "line:col: message" diagnostic.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line, int column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  [[nodiscard]] int line() const { return line_; }
  [[nodiscard]] int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace ultramorse
