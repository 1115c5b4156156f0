#pragma once
// Error taxonomy: ConfigError covers bad input (files, options, expression
// syntax) and maps to exit code 2; RunError and EvalError cover numerical or
// domain failures during a run and map to exit code 1.

#include <stdexcept>
#include <string>

namespace rrm {

struct ConfigError : std::runtime_error {
  int line;  // 1-based config line, -1 when not tied to one
  explicit ConfigError(const std::string& msg, int line_ = -1)
      : std::runtime_error(msg), line(line_) {}
};

struct RunError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expression syntax failure; offset is the 0-based position in the source.
struct ExprError : std::runtime_error {
  std::size_t offset;
  ExprError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
};

// Expression evaluation failure (domain error, overflow, unknown name).
struct EvalError : RunError {
  using RunError::RunError;
};

}  // namespace rrm
