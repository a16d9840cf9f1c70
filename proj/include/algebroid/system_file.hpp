#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebroid/kform.hpp"
#include "algebroid/linearizer.hpp"
#include "algebroid/poly_map.hpp"
#include "algebroid/vec_field.hpp"

namespace algebroid {

// Line-oriented input format. Sections:
//   vars: x1 x2 x3          (names on the same line)
//   f:                      (one expression per following line)
//   g:
//   omega[i]:               (n coefficient expressions, one per dx_j)
//   phi[i]:                 (n-i map components over the first n-i variables)
//   map:                    (n components; used by invert-map)
// '#' starts a comment; blank lines are ignored.
struct SystemFile {
  VarContext vars;
  std::optional<VecField> f;
  std::optional<VecField> g;
  OmegaHints omega_hints;
  ChartHints phi_hints;
  std::optional<PolyMap> map;

  static SystemFile parse(std::istream& in, const std::string& filename);
  static SystemFile parse_file(const std::string& path);
  static SystemFile parse_string(const std::string& text);

  ControlSystem control_system() const;  // requires f and g

  std::string print() const;  // parse(print(x)) == x
};

}  // namespace algebroid
