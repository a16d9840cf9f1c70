#include "algebroid/algebroid_ctx.hpp"

#include "algebroid/errors.hpp"

namespace algebroid {

AlgebroidContext AlgebroidContext::make(VecField g, KForm omega,
                                        std::optional<PolyMap> straightening) {
  require_same_context(g.context(), omega.context(), "algebroid context");
  if (!is_integrable(omega))
    throw precondition_error("omega is not integrable (d omega ^ omega != 0)");
  AlgebroidContext ctx{std::move(g), std::move(omega), std::nullopt};
  if (ctx.omega_g().is_zero())
    throw precondition_error("omega pairs to zero with g");
  if (straightening) {
    const PolyMap& phi = *straightening;
    require_same_context(phi.context(), ctx.g.context(), "straightening map");
    const int n = phi.dimension();
    VecField pushed = pushforward(phi, ctx.g);
    for (int i = 0; i + 1 < n; ++i)
      if (!pushed.component(i).is_zero())
        throw precondition_error(
            "straightening map does not send g to the last coordinate direction");
    if (pushed.component(n - 1).is_zero())
      throw precondition_error("straightening map degenerates on g");
    // Last component must be a potential aligned with the omega foliation:
    // d psi ^ omega = 0 certifies d psi = mu omega.
    KForm dpsi = differential(RatFn(phi.component(n - 1)));
    KForm dpsi_wedge(ctx.omega.context(), 2);
    for (const auto& [ti, ci] : dpsi.terms())
      for (const auto& [tj, cj] : ctx.omega.terms()) {
        int i = ti[0], j = tj[0];
        if (i == j) continue;
        if (i < j)
          dpsi_wedge.add_term({i, j}, ci * cj);
        else
          dpsi_wedge.add_term({j, i}, -(ci * cj));
      }
    if (!dpsi_wedge.is_zero())
      throw precondition_error(
          "last straightening component is not a potential of a multiple of omega");
    ctx.straightening = std::move(straightening);
  }
  return ctx;
}

bool equal_mod_g(const VecField& a, const VecField& b, const VecField& g) {
  require_same_context(a.context(), g.context(), "equality mod g");
  require_same_context(b.context(), g.context(), "equality mod g");
  VecField d = a - b;
  std::optional<RatFn> ratio;
  for (int i = 0; i < g.dimension(); ++i) {
    if (g.component(i).is_zero()) {
      if (!d.component(i).is_zero()) return false;
      continue;
    }
    RatFn r = d.component(i) / g.component(i);
    if (!ratio)
      ratio = std::move(r);
    else if (*ratio != r)
      return false;
  }
  return true;
}

VecField algebroid_bracket(const VecField& m1, const VecField& m2,
                           const AlgebroidContext& ctx) {
  RatFn wg = ctx.omega_g();
  if (wg.is_zero()) throw precondition_error("omega.g is identically zero");
  RatFn a1 = pair_form_field(ctx.omega, m1) / wg;
  RatFn a2 = pair_form_field(ctx.omega, m2) / wg;
  return lie_bracket(m1, m2) + lie_bracket(ctx.g, m1).scaled(a2) -
         lie_bracket(ctx.g, m2).scaled(a1);
}

VecField anchor_form(const VecField& m, const AlgebroidContext& ctx) {
  RatFn wg = ctx.omega_g();
  if (wg.is_zero()) throw precondition_error("omega.g is identically zero");
  RatFn wm = pair_form_field(ctx.omega, m);
  return m - ctx.g.scaled(wm / wg);
}

VecField anchor_chart(const VecField& m, const AlgebroidContext& ctx) {
  if (!ctx.straightening)
    throw precondition_error("projection anchor requires a straightening map");
  VecField pushed = pushforward(*ctx.straightening, m);
  std::vector<RatFn> comps = pushed.components();
  comps.back() = RatFn::zero(m.context());
  return VecField(m.context(), std::move(comps));
}

namespace {

CheckResult from_difference(const VecField& lhs, const VecField& rhs,
                            const VecField& g) {
  if (equal_mod_g(lhs, rhs, g)) return {true, ""};
  return {false, (lhs - rhs).to_string()};
}

}  // namespace

CheckResult check_leibniz(const AlgebroidContext& ctx, const VecField& m1,
                          const VecField& m2, const RatFn& alpha,
                          AnchorKind kind) {
  if (kind == AnchorKind::chart) {
    if (!ctx.straightening)
      throw precondition_error("chart variant requires a straightening map");
    if (!lie_derivative(ctx.g, alpha).is_zero())
      throw precondition_error(
          "chart variant requires alpha constant along g (L_g alpha = 0)");
  }
  VecField lhs = algebroid_bracket(m1, m2.scaled(alpha), ctx);
  // The derivative of alpha along the anchor of m1. For the chart anchor
  // this equals the derivative along m1 itself because L_g alpha = 0 and the
  // two anchors differ by a multiple of g.
  RatFn danchor = kind == AnchorKind::form
                      ? lie_derivative(anchor_form(m1, ctx), alpha)
                      : lie_derivative(m1, alpha);
  VecField rhs = algebroid_bracket(m1, m2, ctx).scaled(alpha) + m2.scaled(danchor);
  return from_difference(lhs, rhs, ctx.g);
}

CheckResult check_homomorphism(const AlgebroidContext& ctx, const VecField& m1,
                               const VecField& m2, AnchorKind kind) {
  VecField br = algebroid_bracket(m1, m2, ctx);
  if (kind == AnchorKind::form) {
    VecField lhs = anchor_form(br, ctx);
    VecField rhs = lie_bracket(anchor_form(m1, ctx), anchor_form(m2, ctx));
    if (lhs == rhs) return {true, ""};
    return {false, (lhs - rhs).to_string()};
  }
  VecField lhs = anchor_chart(br, ctx);
  VecField rhs = lie_bracket(anchor_chart(m1, ctx), anchor_chart(m2, ctx));
  if (lhs == rhs) return {true, ""};
  return {false, (lhs - rhs).to_string()};
}

CheckResult check_jacobi(const AlgebroidContext& ctx, const VecField& m1,
                         const VecField& m2, const VecField& m3) {
  VecField sum = algebroid_bracket(m1, algebroid_bracket(m2, m3, ctx), ctx) +
                 algebroid_bracket(m2, algebroid_bracket(m3, m1, ctx), ctx) +
                 algebroid_bracket(m3, algebroid_bracket(m1, m2, ctx), ctx);
  return from_difference(sum, VecField::zero(sum.context()), ctx.g);
}

CheckResult crosscheck_isomorphism(const AlgebroidContext& ctx,
                                   const VecField& m1, const VecField& m2) {
  if (!ctx.straightening)
    throw precondition_error("isomorphism cross-check requires a straightening map");
  VecField br = algebroid_bracket(m1, m2, ctx);
  VecField via_bracket = anchor_chart(br, ctx);
  VecField downstairs = lie_bracket(anchor_chart(m1, ctx), anchor_chart(m2, ctx));
  if (via_bracket != downstairs)
    return {false, (via_bracket - downstairs).to_string()};
  // Same data routed through the quotient anchor first.
  VecField via_form = anchor_chart(anchor_form(br, ctx), ctx);
  if (via_form != downstairs) return {false, (via_form - downstairs).to_string()};
  return {true, ""};
}

}  // namespace algebroid
