#pragma once

#include <stdexcept>
#include <string>

namespace algebroid {

// Base class for everything thrown by the library.
struct error : std::runtime_error {
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input: bad expression text, wrong dimensions, unknown variables.
struct input_error : error {
  using error::error;
};

struct parse_error : input_error {
  parse_error(const std::string& msg, int line, int column)
      : input_error(msg + " (line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ")"),
        line(line),
        column(column) {}
  int line = 0;
  int column = 0;
};

// Precondition of an operation violated (context mismatch, zero denominator,
// wrong form degree, constant output candidate, ...).
struct precondition_error : input_error {
  using input_error::input_error;
};

// An algorithm could not complete: these map to CLI exit code 3.
struct algorithm_error : error {
  using error::error;
};

struct inversion_error : algorithm_error {
  using algorithm_error::algorithm_error;
};

struct heuristic_exhausted_error : algorithm_error {
  heuristic_exhausted_error(const std::string& msg, int iteration)
      : algorithm_error(msg + " (iteration " + std::to_string(iteration) + ")"),
        iteration(iteration) {}
  int iteration = 0;
};

struct degenerate_iteration_error : algorithm_error {
  degenerate_iteration_error(const std::string& msg, int iteration)
      : algorithm_error(msg + " (iteration " + std::to_string(iteration) + ")"),
        iteration(iteration) {}
  int iteration = 0;
};

struct not_exact_error : algorithm_error {
  not_exact_error(const std::string& msg, std::string residual)
      : algorithm_error(msg), residual(std::move(residual)) {}
  std::string residual;
};

struct ambiguous_output_error : algorithm_error {
  using algorithm_error::algorithm_error;
};

}  // namespace algebroid
