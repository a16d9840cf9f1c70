#pragma once

#include <optional>
#include <string>

#include "algebroid/calculus.hpp"
#include "algebroid/kform.hpp"
#include "algebroid/poly_map.hpp"
#include "algebroid/vec_field.hpp"

namespace algebroid {

// Shared data of both algebroid structures: a transversal field g, an
// integrable 1-form omega with omega.g not identically zero, and optionally
// a straightening map whose first n-1 components annihilate g and whose
// last component is transversal (the chart realizing the projection anchor).
struct AlgebroidContext {
  VecField g;
  KForm omega;
  std::optional<PolyMap> straightening;

  // Validates all invariants; throws precondition_error on violation.
  static AlgebroidContext make(VecField g, KForm omega,
                               std::optional<PolyMap> straightening = std::nullopt);

  RatFn omega_g() const { return pair_form_field(omega, g); }
};

// a == b modulo span(g): the difference is a single rational-function
// multiple of g.
bool equal_mod_g(const VecField& a, const VecField& b, const VecField& g);

// Equivalence class of vector fields modulo functional multiples of g,
// carried by one representative.
class SectionClass {
 public:
  explicit SectionClass(VecField representative)
      : rep_(std::move(representative)) {}
  const VecField& representative() const { return rep_; }

  bool equivalent_to(const SectionClass& other, const VecField& g) const {
    return equal_mod_g(rep_, other.rep_, g);
  }

 private:
  VecField rep_;
};

// <m1, m2> = [m1,m2] + (w m2 / w g)[g,m1] - (w m1 / w g)[g,m2].
// The returned field is one representative of the result class.
VecField algebroid_bracket(const VecField& m1, const VecField& m2,
                           const AlgebroidContext& ctx);

// m - (w m / w g) g; annihilated by omega.
VecField anchor_form(const VecField& m, const AlgebroidContext& ctx);

// Projection anchor through the straightening chart: the pushforward with
// its transversal (last) component zeroed. Components are reported in the
// chart's target coordinates; entries may still involve the transversal
// coordinate when the input is not projectable along g.
VecField anchor_chart(const VecField& m, const AlgebroidContext& ctx);

enum class AnchorKind { form, chart };

struct CheckResult {
  bool ok = false;
  std::string residual;  // symbolic difference when !ok
  explicit operator bool() const { return ok; }
};

// <m1, a m2> = a <m1, m2> + (anchor(m1) a) m2  modulo span(g).
// The chart variant requires L_g alpha = 0.
CheckResult check_leibniz(const AlgebroidContext& ctx, const VecField& m1,
                          const VecField& m2, const RatFn& alpha,
                          AnchorKind kind);

// anchor(<m1,m2>) = [anchor(m1), anchor(m2)].
CheckResult check_homomorphism(const AlgebroidContext& ctx, const VecField& m1,
                               const VecField& m2, AnchorKind kind);

// Cyclic sum of <mi, <mj, mk>> vanishes modulo span(g).
CheckResult check_jacobi(const AlgebroidContext& ctx, const VecField& m1,
                         const VecField& m2, const VecField& m3);

// The chart anchor is a bracket homomorphism and agrees with pushing the
// form anchor through the chart and projecting.
CheckResult crosscheck_isomorphism(const AlgebroidContext& ctx,
                                   const VecField& m1, const VecField& m2);

}  // namespace algebroid
