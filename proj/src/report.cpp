#include "algebroid/report.hpp"

#include <sstream>

#include "json.hpp"

namespace algebroid {

namespace {

using json = nlohmann::ordered_json;

json iteration_json(const IterationReport& it) {
  json j;
  j["index"] = it.index;
  j["active_dim"] = it.active_dim;
  if (!it.f.empty()) j["f"] = it.f;
  if (!it.g.empty()) j["g"] = it.g;
  if (!it.omega.empty()) j["omega"] = it.omega;
  if (!it.nu.empty()) j["nu"] = it.nu;
  if (!it.chart.empty()) j["phi"] = it.chart;
  if (!it.chart_inverse.empty()) j["phi_inverse"] = it.chart_inverse;
  return j;
}

}  // namespace

std::string Report::to_json() const {
  json j;
  j["command"] = command;
  j["input"] = input;
  j["success"] = success;
  if (rank) j["rank"] = *rank;
  if (accessible) j["accessible"] = *accessible;
  if (involutive) j["involutive"] = *involutive;
  if (!methods.empty()) {
    json ms = json::array();
    for (const auto& m : methods) {
      json mj;
      mj["method"] = m.method;
      json its = json::array();
      for (const auto& it : m.iterations) its.push_back(iteration_json(it));
      mj["iterations"] = its;
      if (!m.integrating_factor.empty())
        mj["integrating_factor"] = m.integrating_factor;
      mj["output_raw"] = m.output_raw;
      mj["output"] = m.output;
      mj["relative_degree"] = m.relative_degree;
      if (!m.chain_map_determinant.empty()) {
        mj["chain_map_determinant"] = m.chain_map_determinant;
        mj["chain_map_determinant_constant"] = m.chain_map_determinant_constant;
      }
      if (!m.warnings.empty()) mj["warnings"] = m.warnings;
      ms.push_back(mj);
    }
    j["methods"] = ms;
  }
  if (!map_components.empty()) j["map"] = map_components;
  if (!inverse_components.empty()) j["inverse"] = inverse_components;
  if (!map_determinant.empty()) j["jacobian_determinant"] = map_determinant;
  if (roundtrip_ok) j["roundtrip_ok"] = *roundtrip_ok;
  if (!comparisons.empty()) {
    json cs = json::array();
    for (const auto& [label, status] : comparisons) {
      json c;
      c["label"] = label;
      c["status"] = status;
      cs.push_back(c);
    }
    j["comparisons"] = cs;
  }
  if (!warnings.empty()) j["warnings"] = warnings;
  return j.dump(2) + "\n";
}

std::string Report::to_text() const {
  std::ostringstream os;
  os << "== " << command << " " << input << "\n";
  if (rank) os << "rank: " << *rank << "\n";
  if (accessible) os << "accessible: " << (*accessible ? "yes" : "no") << "\n";
  if (involutive) os << "involutive: " << (*involutive ? "yes" : "no") << "\n";
  for (const auto& m : methods) {
    os << "-- method " << m.method << "\n";
    for (const auto& it : m.iterations) {
      os << "  iteration " << it.index << " (dim " << it.active_dim << ")\n";
      auto list = [&](const char* name, const std::vector<std::string>& xs) {
        if (xs.empty()) return;
        os << "    " << name << ":";
        for (const auto& x : xs) os << " [" << x << "]";
        os << "\n";
      };
      list("f", it.f);
      list("g", it.g);
      list("omega", it.omega);
      list("nu", it.nu);
      list("phi", it.chart);
      list("phi^-1", it.chart_inverse);
    }
    if (!m.integrating_factor.empty())
      os << "  integrating factor: " << m.integrating_factor << "\n";
    os << "  output (raw):       " << m.output_raw << "\n";
    os << "  output (canonical): " << m.output << "\n";
    os << "  relative degree:    " << m.relative_degree << "\n";
    if (!m.chain_map_determinant.empty())
      os << "  chain map det:      " << m.chain_map_determinant
         << (m.chain_map_determinant_constant ? "" : "  (warning: not constant)")
         << "\n";
    for (const auto& w : m.warnings) os << "  warning: " << w << "\n";
  }
  if (!map_components.empty()) {
    os << "map:\n";
    for (const auto& c : map_components) os << "  " << c << "\n";
  }
  if (!inverse_components.empty()) {
    os << "inverse:\n";
    for (const auto& c : inverse_components) os << "  " << c << "\n";
  }
  if (!map_determinant.empty())
    os << "jacobian determinant: " << map_determinant << "\n";
  if (roundtrip_ok)
    os << "round trip: " << (*roundtrip_ok ? "ok" : "FAILED") << "\n";
  for (const auto& [label, status] : comparisons)
    os << "  " << label << ": " << status << "\n";
  for (const auto& w : warnings) os << "warning: " << w << "\n";
  os << (success ? "OK" : "FAILED") << " (" << elapsed_ms << " ms)\n";
  return os.str();
}

}  // namespace algebroid
