#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ranky {

// Malformed text input (Matrix Market and similar line-oriented formats).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Damaged or truncated binary block record.
class RecordError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// SVD iteration failed to reach the off-diagonal threshold within the sweep cap.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace ranky
