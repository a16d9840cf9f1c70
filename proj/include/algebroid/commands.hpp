#pragma once

#include <string>

#include "algebroid/linearizer.hpp"
#include "algebroid/report.hpp"

namespace algebroid {

// Exit codes shared by the CLI:
//   0 success, 1 condition-check failure, 2 input error, 3 algorithmic failure.
enum ExitCode : int {
  exit_ok = 0,
  exit_check_failed = 1,
  exit_input_error = 2,
  exit_algorithm_failed = 3,
};

struct CommandOptions {
  int max_ansatz_degree = 4;
  bool force = false;
  std::string json_path;      // write the machine document here when nonempty
  std::uint64_t seed = 0x5eed5eed5eedULL;  // overridden by ALGEBROID_SEED
};

std::uint64_t seed_from_environment(std::uint64_t fallback);

int cmd_check(const std::string& path, const CommandOptions& opts, Report& report);
int cmd_linearize(const std::string& path, const std::string& method,
                  const CommandOptions& opts, Report& report);
int cmd_invert_map(const std::string& path, const CommandOptions& opts,
                   Report& report);
int cmd_example(const CommandOptions& opts, Report& report);

// Fills per-method trace sections of a report; shared with the example
// command and the test suites.
MethodReport describe_form_trace(const FormTrace& trace, const ControlSystem& sys);
MethodReport describe_chart_trace(const ChartTrace& trace, const ControlSystem& sys);

}  // namespace algebroid
