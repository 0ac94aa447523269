#pragma once

#include <stdexcept>
#include <string>

namespace effcond {

// Error taxonomy shared by all modules. Validation failures derive from
// std::invalid_argument, computation failures from std::runtime_error,
// so the CLI can map them to distinct exit codes.

struct ParseError : std::invalid_argument {
  ParseError(std::size_t line, const std::string& what)
      : std::invalid_argument("parse error at line " + std::to_string(line) + ": " + what),
        line_number(line) {}
  std::size_t line_number;
};

struct InvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PackingFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivergenceGuard : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SingularInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct IndexCollision : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct SeriesFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSolvable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundSymbol : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace effcond
