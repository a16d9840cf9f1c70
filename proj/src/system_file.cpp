#include "algebroid/system_file.hpp"

#include <fstream>
#include <sstream>

#include "algebroid/errors.hpp"
#include "algebroid/calculus.hpp"
#include "algebroid/expr_parse.hpp"

namespace algebroid {

namespace {

std::string strip(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct Section {
  std::string name;
  int index = -1;  // omega[i] / phi[i]
  int line = 0;
  std::vector<std::pair<int, std::string>> exprs;  // line number + text
};

}  // namespace

SystemFile SystemFile::parse(std::istream& in, const std::string& filename) {
  std::vector<Section> sections;
  std::vector<std::string> var_names;
  int vars_line = -1;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    line = strip(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    bool header = false;
    if (colon != std::string::npos) {
      std::string head = strip(line.substr(0, colon));
      // A header is a bare word, optionally with [index].
      std::string name = head;
      int index = -1;
      auto lb = head.find('[');
      if (lb != std::string::npos && head.back() == ']') {
        name = strip(head.substr(0, lb));
        std::string num = head.substr(lb + 1, head.size() - lb - 2);
        try {
          index = std::stoi(num);
        } catch (...) {
          throw parse_error("bad section index '" + num + "'", lineno, 1);
        }
      }
      if (name == "vars" || name == "f" || name == "g" || name == "omega" ||
          name == "phi" || name == "map") {
        header = true;
        std::string rest = strip(line.substr(colon + 1));
        if (name == "vars") {
          if (vars_line >= 0) throw parse_error("duplicate vars section", lineno, 1);
          vars_line = lineno;
          std::istringstream ss(rest);
          std::string w;
          while (ss >> w) var_names.push_back(w);
        } else {
          sections.push_back({name, index, lineno, {}});
          if (!rest.empty()) sections.back().exprs.push_back({lineno, rest});
        }
      }
    }
    if (!header) {
      if (sections.empty())
        throw parse_error("expression before any section", lineno, 1);
      sections.back().exprs.push_back({lineno, line});
    }
  }
  if (var_names.empty())
    throw parse_error("missing vars section in " + filename, std::max(vars_line, 1), 1);

  SystemFile out;
  try {
    out.vars = VarContext(var_names);
  } catch (const input_error& e) {
    throw parse_error(e.what(), vars_line, 1);
  }
  const int n = out.vars.size();

  auto parse_exprs = [&](const Section& s, const VarContext& ctx) {
    std::vector<Poly> ps;
    for (const auto& [ln, text] : s.exprs) ps.push_back(parse_poly(ctx, text, ln));
    return ps;
  };

  for (const auto& s : sections) {
    if (s.name == "f" || s.name == "g") {
      auto ps = parse_exprs(s, out.vars);
      if (static_cast<int>(ps.size()) != n)
        throw parse_error(s.name + " needs " + std::to_string(n) + " components",
                          s.line, 1);
      auto vf = VecField::from_polys(out.vars, std::move(ps));
      (s.name == "f" ? out.f : out.g) = std::move(vf);
    } else if (s.name == "map") {
      auto ps = parse_exprs(s, out.vars);
      if (static_cast<int>(ps.size()) != n)
        throw parse_error("map needs " + std::to_string(n) + " components", s.line, 1);
      out.map = PolyMap(out.vars, std::move(ps));
    } else if (s.name == "omega") {
      if (s.index < 0) throw parse_error("omega section needs an index", s.line, 1);
      auto ps = parse_exprs(s, out.vars);
      if (static_cast<int>(ps.size()) != n)
        throw parse_error("omega[" + std::to_string(s.index) + "] needs " +
                              std::to_string(n) + " coefficients",
                          s.line, 1);
      KForm hint = KForm::one_form_polys(out.vars, std::move(ps));
      if (!is_integrable(hint))
        throw parse_error("omega[" + std::to_string(s.index) +
                              "] is not integrable (d omega ^ omega != 0)",
                          s.line, 1);
      out.omega_hints[s.index].push_back(std::move(hint));
    } else if (s.name == "phi") {
      if (s.index < 0) throw parse_error("phi section needs an index", s.line, 1);
      const int d = n - s.index;
      if (d < 1)
        throw parse_error("phi index too large for dimension", s.line, 1);
      VarContext sub = out.vars.prefix(d);
      auto ps = parse_exprs(s, sub);
      if (static_cast<int>(ps.size()) != d)
        throw parse_error("phi[" + std::to_string(s.index) + "] needs " +
                              std::to_string(d) + " components",
                          s.line, 1);
      if (out.phi_hints.count(s.index))
        throw parse_error("duplicate phi section", s.line, 1);
      out.phi_hints.emplace(s.index, PolyMap(sub, std::move(ps)));
    }
  }
  return out;
}

SystemFile SystemFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open " + path);
  return parse(in, path);
}

SystemFile SystemFile::parse_string(const std::string& text) {
  std::istringstream in(text);
  return parse(in, "<string>");
}

ControlSystem SystemFile::control_system() const {
  if (!f || !g) throw input_error("file does not define both f and g");
  return ControlSystem::make(vars, *f, *g);
}

std::string SystemFile::print() const {
  std::ostringstream os;
  os << "vars:";
  for (const auto& nm : vars.names()) os << " " << nm;
  os << "\n";
  auto field = [&](const char* name, const VecField& v) {
    os << name << ":\n";
    for (const auto& c : v.components()) os << "  " << c.to_string() << "\n";
  };
  if (f) field("f", *f);
  if (g) field("g", *g);
  for (const auto& [i, forms] : omega_hints)
    for (const auto& w : forms) {
      os << "omega[" << i << "]:\n";
      for (const auto& c : w.coefficient_vector()) os << "  " << c.to_string() << "\n";
    }
  for (const auto& [i, m] : phi_hints) {
    os << "phi[" << i << "]:\n";
    for (const auto& c : m.components()) os << "  " << c.to_string() << "\n";
  }
  if (map) {
    os << "map:\n";
    for (const auto& c : map->components()) os << "  " << c.to_string() << "\n";
  }
  return os.str();
}

}  // namespace algebroid
