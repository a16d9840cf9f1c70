#pragma once

#include <optional>
#include <string>
#include <vector>

namespace algebroid {

struct IterationReport {
  int index = 0;
  int active_dim = 0;
  std::vector<std::string> f, g;      // component strings
  std::vector<std::string> omega;     // 1-form coefficients (form method)
  std::vector<std::string> nu;        // phase-2 forms (form method)
  std::vector<std::string> chart;     // chart components (chart method)
  std::vector<std::string> chart_inverse;
};

struct MethodReport {
  std::string method;  // "algebroid1" or "algebroid2"
  std::vector<IterationReport> iterations;
  std::string integrating_factor;
  std::string output_raw;
  std::string output;  // canonical form
  int relative_degree = 0;
  std::string chain_map_determinant;  // det of (y, L_f y, ...) when polynomial
  bool chain_map_determinant_constant = false;
  std::vector<std::string> warnings;
};

// One structured result per command invocation. Wall-clock timing stays in
// the human rendering; the machine document is byte-deterministic.
struct Report {
  std::string command;
  std::string input;

  // check verdicts
  std::optional<int> rank;
  std::optional<bool> accessible;
  std::optional<bool> involutive;

  std::vector<MethodReport> methods;

  // invert-map
  std::vector<std::string> map_components;
  std::vector<std::string> inverse_components;
  std::string map_determinant;
  std::optional<bool> roundtrip_ok;

  // example: label -> ok/description pairs
  std::vector<std::pair<std::string, std::string>> comparisons;

  std::vector<std::string> warnings;
  bool success = false;
  double elapsed_ms = 0.0;

  std::string to_json() const;   // deterministic, no timing
  std::string to_text() const;   // human-readable, includes timing
};

}  // namespace algebroid
