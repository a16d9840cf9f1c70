#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "algebroid/algebroid_ctx.hpp"
#include "algebroid/calculus.hpp"
#include "algebroid/kform.hpp"
#include "algebroid/poly_map.hpp"
#include "algebroid/vec_field.hpp"

namespace algebroid {

// Single-input affine system  xdot = f(x) + g(x) u.
struct ControlSystem {
  VarContext ctx;
  VecField f;
  VecField g;

  static ControlSystem make(VarContext ctx, VecField f, VecField g);
};

struct Diagnostics {
  int rank = 0;               // rank of (g, ad_f g, ..., ad_f^{n-1} g)
  bool accessible = false;    // rank == n
  bool involutive = false;    // span(g, ..., ad_f^{n-2} g) closed under brackets
  bool rank_symbolically_confirmed = false;
  std::vector<std::string> warnings;
  double elapsed_ms = 0.0;
};

struct LinearizeOptions {
  int max_ansatz_degree = 4;
  bool force = false;  // skip the classical precheck gate
  std::uint64_t seed = 0x5eed5eed5eedULL;
};

// Accessibility + involutivity verdicts. Rank is estimated at seeded random
// rational points and any full-rank verdict is confirmed symbolically;
// otherwise the generic rank is settled by symbolic elimination.
Diagnostics classical_check(const ControlSystem& sys,
                            std::uint64_t seed = 0x5eed5eed5eedULL);

using OmegaHints = std::map<int, std::vector<KForm>>;  // per iteration
using ChartHints = std::map<int, PolyMap>;             // per iteration

// Admissible omega candidates for one iteration, in preference order:
// hints, coordinate forms with constant nonzero pairing (unit pairings
// first), the bounded-degree exact ansatz dP with dP.g = 1, and, on the
// final iteration only, coordinate forms with any nonzero pairing.
std::vector<KForm> omega_candidates(const VecField& g,
                                    const std::vector<KForm>& hints,
                                    bool final_iteration, int max_degree);

// First admissible candidate; throws heuristic_exhausted_error.
KForm choose_omega(const VecField& g, const std::vector<KForm>& hints,
                   int iteration, bool final_iteration, int max_degree = 4);

// Chart with active_dim-1 first integrals of g (bounded-degree ansatz,
// differential independence certified at a seeded point and confirmed
// symbolically) stacked under the potential of omega; inverse attached by
// triangular inversion. Inputs beyond active_dim must be zero/absent.
PolyMap build_straightening_map(const VecField& g, const KForm& omega,
                                int active_dim, int max_degree = 4,
                                std::uint64_t seed = 0x5eed5eed5eedULL);

// Reorders chart components so the ones annihilating g come first and the
// single transversal one is last; requires exactly one transversal
// component.
PolyMap normalize_chart(const PolyMap& chart, const VecField& g);

// --- 1-form algorithm (quotient anchor) ----------------------------------

struct FormIteration {
  VecField f;
  VecField g;
  KForm omega;
  std::optional<KForm> nu;  // filled by phase 2
};

struct FormTrace {
  std::vector<FormIteration> steps;  // steps[i] holds f_i, g_i, omega_i
  std::optional<RatFn> integrating_factor;
  std::optional<Poly> output_raw;    // potential as integrated
  std::optional<Poly> output;        // canonical form
  std::vector<std::string> warnings;
};

// Phase 1 alone: anchors f and [f,g] through each omega in turn, validating
// only phase-1 constraints (omega admissibility, nondegenerate g).
FormTrace form_algorithm_phase1(const ControlSystem& sys, const OmegaHints& hints,
                                const LinearizeOptions& opts = {});

// Phase 2 alone: the descending nu recursion, division by the integrating
// factor, closedness check and potential integration.
Poly form_algorithm_phase2(FormTrace& trace);

// Both phases with backtracking across the omega candidates; exhaustion at
// iteration 0 raises heuristic_exhausted_error naming it.
FormTrace linearize_by_forms(const ControlSystem& sys, const OmegaHints& hints,
                             const LinearizeOptions& opts = {});

// --- chart algorithm (projection anchor) ---------------------------------

struct ChartIteration {
  VecField f;        // embedded: components beyond active_dim are zero
  VecField g;
  int active_dim = 0;
  std::optional<PolyMap> chart;  // active_dim-dimensional; last step has none
};

struct ChartTrace {
  std::vector<ChartIteration> steps;
  std::optional<PolyMap> total;  // extended charts composed, n-dimensional
  int output_component = -1;
  std::optional<Poly> output_raw;
  std::optional<Poly> output;
  std::vector<std::string> warnings;
};

ChartTrace linearize_by_charts(const ControlSystem& sys, const ChartHints& charts,
                               const OmegaHints& omega_hints = {},
                               const LinearizeOptions& opts = {});

// Smallest k with L_g L_f^{k-1} y != 0 (0 if the whole chain up to k = n
// vanishes). Throws precondition_error for constant y.
int verify_relative_degree(const RatFn& y, const ControlSystem& sys);

// Zero constant term, positive graded-lex leading coefficient.
Poly canonical_output(const Poly& y);

// (y, L_f y, ..., L_f^{n-1} y) when every entry is polynomial.
std::optional<PolyMap> lie_derivative_map(const ControlSystem& sys, const RatFn& y);

}  // namespace algebroid
