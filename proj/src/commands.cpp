#include "algebroid/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>

#include "algebroid/builtin_example.hpp"
#include "algebroid/errors.hpp"
#include "algebroid/system_file.hpp"

namespace algebroid {

namespace {

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start)
        .count();
  }
};

std::vector<std::string> strings_of(const VecField& v, int upto = -1) {
  std::vector<std::string> out;
  const int n = upto < 0 ? v.dimension() : upto;
  for (int i = 0; i < n; ++i) out.push_back(v.component(i).to_string());
  return out;
}

std::vector<std::string> strings_of(const KForm& w) {
  std::vector<std::string> out;
  for (const auto& c : w.coefficient_vector()) out.push_back(c.to_string());
  return out;
}

std::vector<std::string> strings_of(const PolyMap& m) {
  std::vector<std::string> out;
  for (const auto& c : m.components()) out.push_back(c.to_string());
  return out;
}

void finish_method_report(MethodReport& rep, const ControlSystem& sys,
                          const Poly& output_raw, const Poly& output) {
  rep.output_raw = output_raw.to_string();
  rep.output = output.to_string();
  rep.relative_degree = verify_relative_degree(RatFn(output), sys);
  if (auto chain = lie_derivative_map(sys, RatFn(output_raw))) {
    Poly det = jacobian_determinant(*chain);
    rep.chain_map_determinant = det.to_string();
    rep.chain_map_determinant_constant = det.is_constant() && !det.is_zero();
    if (!rep.chain_map_determinant_constant)
      rep.warnings.push_back(
          "chain map Jacobian determinant is not a nonzero constant");
  }
}

int write_json(const CommandOptions& opts, const Report& report) {
  if (!opts.json_path.empty()) {
    std::ofstream out(opts.json_path);
    if (!out) throw input_error("cannot write " + opts.json_path);
    out << report.to_json();
  }
  return report.success ? exit_ok : exit_check_failed;
}

int classify(const error& e, Report& report) {
  report.success = false;
  report.warnings.push_back(e.what());
  if (dynamic_cast<const algorithm_error*>(&e)) return exit_algorithm_failed;
  return exit_input_error;
}

}  // namespace

std::uint64_t seed_from_environment(std::uint64_t fallback) {
  if (const char* s = std::getenv("ALGEBROID_SEED")) {
    try {
      return std::stoull(s);
    } catch (...) {
      throw input_error("ALGEBROID_SEED must be an unsigned integer");
    }
  }
  return fallback;
}

MethodReport describe_form_trace(const FormTrace& trace, const ControlSystem& sys) {
  MethodReport rep;
  rep.method = "algebroid2";
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    IterationReport it;
    it.index = static_cast<int>(i);
    it.active_dim = sys.ctx.size();
    it.f = strings_of(step.f);
    it.g = strings_of(step.g);
    it.omega = strings_of(step.omega);
    if (step.nu) it.nu = strings_of(*step.nu);
    rep.iterations.push_back(std::move(it));
  }
  if (trace.integrating_factor)
    rep.integrating_factor = trace.integrating_factor->to_string();
  rep.warnings = trace.warnings;
  finish_method_report(rep, sys, *trace.output_raw, *trace.output);
  return rep;
}

MethodReport describe_chart_trace(const ChartTrace& trace, const ControlSystem& sys) {
  MethodReport rep;
  rep.method = "algebroid1";
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    IterationReport it;
    it.index = static_cast<int>(i);
    it.active_dim = step.active_dim;
    it.f = strings_of(step.f, step.active_dim);
    it.g = strings_of(step.g, step.active_dim);
    if (step.chart) {
      it.chart = strings_of(*step.chart);
      if (step.chart->has_inverse()) it.chart_inverse = strings_of(step.chart->inverse());
    }
    rep.iterations.push_back(std::move(it));
  }
  rep.warnings = trace.warnings;
  finish_method_report(rep, sys, *trace.output_raw, *trace.output);
  return rep;
}

int cmd_check(const std::string& path, const CommandOptions& opts, Report& report) {
  Timer timer;
  report.command = "check";
  report.input = path;
  try {
    SystemFile sf = SystemFile::parse_file(path);
    ControlSystem sys = sf.control_system();
    Diagnostics diag = classical_check(sys, seed_from_environment(opts.seed));
    report.rank = diag.rank;
    report.accessible = diag.accessible;
    report.involutive = diag.involutive;
    report.warnings = diag.warnings;
    report.success = diag.accessible && diag.involutive;
    report.elapsed_ms = timer.ms();
    return write_json(opts, report);
  } catch (const error& e) {
    report.elapsed_ms = timer.ms();
    return classify(e, report);
  }
}

int cmd_linearize(const std::string& path, const std::string& method,
                  const CommandOptions& opts, Report& report) {
  Timer timer;
  report.command = "linearize";
  report.input = path;
  try {
    SystemFile sf = SystemFile::parse_file(path);
    ControlSystem sys = sf.control_system();
    std::uint64_t seed = seed_from_environment(opts.seed);

    Diagnostics diag = classical_check(sys, seed);
    report.rank = diag.rank;
    report.accessible = diag.accessible;
    report.involutive = diag.involutive;
    if (!(diag.accessible && diag.involutive) && !opts.force) {
      report.warnings.push_back(
          "classical linearizability conditions fail; rerun with --force to try anyway");
      report.success = false;
      report.elapsed_ms = timer.ms();
      if (!opts.json_path.empty()) write_json(opts, report);
      return exit_check_failed;
    }

    LinearizeOptions lo;
    lo.max_ansatz_degree = opts.max_ansatz_degree;
    lo.force = true;  // the gate ran above
    lo.seed = seed;

    if (method == "algebroid2" || method == "both") {
      FormTrace tr = linearize_by_forms(sys, sf.omega_hints, lo);
      report.methods.push_back(describe_form_trace(tr, sys));
    }
    if (method == "algebroid1" || method == "both") {
      ChartTrace tr = linearize_by_charts(sys, sf.phi_hints, sf.omega_hints, lo);
      report.methods.push_back(describe_chart_trace(tr, sys));
    }
    if (method == "both" && report.methods[0].output != report.methods[1].output)
      throw algorithm_error("the two methods disagree on the canonical output");
    report.success = true;
    report.elapsed_ms = timer.ms();
    return write_json(opts, report);
  } catch (const error& e) {
    report.elapsed_ms = timer.ms();
    int code = classify(e, report);
    if (!opts.json_path.empty()) {
      std::ofstream out(opts.json_path);
      if (out) out << report.to_json();
    }
    return code;
  }
}

int cmd_invert_map(const std::string& path, const CommandOptions& opts,
                   Report& report) {
  Timer timer;
  report.command = "invert-map";
  report.input = path;
  try {
    SystemFile sf = SystemFile::parse_file(path);
    if (!sf.map) throw input_error("file does not define a map section");
    PolyMap inverted = invert_triangular(*sf.map);
    PolyMap inv = inverted.inverse();
    report.map_components = strings_of(inverted);
    report.inverse_components = strings_of(inv);
    report.map_determinant = jacobian_determinant(inverted).to_string();
    PolyMap round = compose(inv, inverted);
    report.roundtrip_ok = round == PolyMap::identity(sf.vars);
    report.success = *report.roundtrip_ok;
    report.elapsed_ms = timer.ms();
    return write_json(opts, report);
  } catch (const error& e) {
    report.elapsed_ms = timer.ms();
    return classify(e, report);
  }
}

int cmd_example(const CommandOptions& opts, Report& report) {
  Timer timer;
  report.command = "example";
  report.input = "builtin";
  try {
    ControlSystem sys = example::system();
    std::uint64_t seed = seed_from_environment(opts.seed);

    auto consistency = example::consistency_report();
    report.comparisons = consistency.checks;
    if (!consistency.reconstructed_ok)
      throw error("bundled example: reconstructed drift fails its own checks");
    if (!consistency.transcribed_ok)
      report.warnings.push_back(
          "transcribed drift is inconsistent with the chain map; "
          "the reconstructed drift is the fixture");

    Diagnostics diag = classical_check(sys, seed);
    report.rank = diag.rank;
    report.accessible = diag.accessible;
    report.involutive = diag.involutive;

    LinearizeOptions lo;
    lo.max_ansatz_degree = opts.max_ansatz_degree;
    lo.force = true;
    lo.seed = seed;

    FormTrace form = linearize_by_forms(sys, example::omega_hints(), lo);
    MethodReport form_rep = describe_form_trace(form, sys);
    ChartTrace chart = linearize_by_charts(sys, example::chart_hints(), {}, lo);
    MethodReport chart_rep = describe_chart_trace(chart, sys);

    auto compare = [&](const std::string& label, const std::string& got,
                       const std::string& want) {
      report.comparisons.emplace_back(
          label, got == want ? "ok [" + got + "]"
                             : "MISMATCH got [" + got + "] want [" + want + "]");
      return got == want;
    };
    bool all = true;
    using namespace example::golden;
    for (int i = 0; i < 3; ++i) {
      all &= compare("g1[" + std::to_string(i) + "]",
                     form_rep.iterations[1].g[i], g1[i]);
      all &= compare("g2[" + std::to_string(i) + "]",
                     form_rep.iterations[2].g[i], g2[i]);
      all &= compare("nu2[" + std::to_string(i) + "]",
                     form_rep.iterations[2].nu[i], nu2[i]);
      all &= compare("nu1[" + std::to_string(i) + "]",
                     form_rep.iterations[1].nu[i], nu1[i]);
      all &= compare("nu0[" + std::to_string(i) + "]",
                     form_rep.iterations[0].nu[i], nu0[i]);
    }
    for (int i = 0; i < 2; ++i) {
      all &= compare("chart f1[" + std::to_string(i) + "]",
                     chart_rep.iterations[1].f[i], f1_chart[i]);
      all &= compare("chart g1[" + std::to_string(i) + "]",
                     chart_rep.iterations[1].g[i], g1_chart[i]);
    }
    all &= compare("output (form method)", form_rep.output, output_canonical);
    all &= compare("output (chart method)", chart_rep.output, output_canonical);
    all &= compare("outputs agree", form_rep.output, chart_rep.output);
    all &= compare("relative degree",
                   std::to_string(form_rep.relative_degree),
                   std::to_string(example::golden::relative_degree));
    all &= compare("chain map determinant", form_rep.chain_map_determinant,
                   chain_determinant);

    report.methods.push_back(std::move(form_rep));
    report.methods.push_back(std::move(chart_rep));
    report.success = all;
    report.elapsed_ms = timer.ms();
    return write_json(opts, report);
  } catch (const error& e) {
    report.elapsed_ms = timer.ms();
    return classify(e, report);
  }
}

}  // namespace algebroid
