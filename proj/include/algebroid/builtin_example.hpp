#pragma once

#include "algebroid/linearizer.hpp"
#include "algebroid/poly_map.hpp"
#include "algebroid/system_file.hpp"

namespace algebroid::example {

// Bundled three-state polynomial system. The drift field ships in two
// versions: the transcribed one (which is internally inconsistent, see
// consistency_report) and the exact reconstruction from the chain map; the
// reconstruction is the working fixture.

VarContext context();                 // x1 x2 x3
VecField input_g();
VecField transcribed_f();             // as originally written down (defective)
VecField reconstructed_f();           // solves the chain-map equations exactly
ControlSystem system();               // context + reconstructed f + input g

// The chain map (y, L_f y, L_f^2 y) the example is built around.
PolyMap chain_map();
// Straightening charts: 3-dimensional and 2-dimensional.
PolyMap chart0();
PolyMap chart1();
// The 2-dimensional chart extended by the identity to 3 coordinates.
PolyMap chart1_extended();

OmegaHints omega_hints();             // exact forms for all three iterations
ChartHints chart_hints();

// Runs the consistency oracle: both transcribed and reconstructed f are
// checked against the chain rows; returns per-check "ok"/failure strings and
// sets fixture_is_reconstruction.
struct ConsistencyReport {
  bool transcribed_ok = false;
  bool reconstructed_ok = false;
  std::vector<std::pair<std::string, std::string>> checks;
};
ConsistencyReport consistency_report();

// A ready-to-parse input file with the reconstructed f and all hints.
std::string system_file_text();
// Same system without hints.
std::string system_file_text_no_hints();

namespace golden {
// Canonical component strings for comparisons (graded-lex printing).
extern const char* g1[3];
extern const char* g2[3];
extern const char* nu2[3];
extern const char* nu1[3];
extern const char* nu0[3];
extern const char* f1_chart[2];  // projected drift after the first chart
extern const char* g1_chart[2];
extern const char* output_raw;
extern const char* output_canonical;
extern const char* chart0_inverse[3];
extern const char* chart1_inverse[2];
extern const char* chain_determinant;
constexpr int relative_degree = 3;
}  // namespace golden

}  // namespace algebroid::example
