#pragma once

#include <stdexcept>
#include <string>

namespace wlsa {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("parse error at line " + std::to_string(line_) + ": " + msg),
        line(line_) {}
};

struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ResourceLimitError : std::runtime_error {
  explicit ResourceLimitError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a size precheck already rules out feasibility (for systems that
// require matching universe or constraint-set cardinalities).
struct InfeasibleBySize : std::runtime_error {
  explicit InfeasibleBySize(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace wlsa
