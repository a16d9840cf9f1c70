#include "algebroid/builtin_example.hpp"

#include "algebroid/calculus.hpp"
#include "algebroid/errors.hpp"
#include "algebroid/expr_parse.hpp"
#include "algebroid/linalg.hpp"

namespace algebroid::example {

namespace {

const char* kRowOutput = "x1 - x1^2 - x2 - x3^2";
const char* kRowFirst = "x1^2 + x1 + x3^2 + x2";
const char* kRowSecond = "x3^4 + 2*x2*x3^2 + x3 + x2^2";

Poly parse_here(const VarContext& ctx, const char* s) { return parse_poly(ctx, s); }

}  // namespace

VarContext context() { return VarContext::numbered("x", 3); }

VecField input_g() {
  VarContext ctx = context();
  return VecField::from_polys(
      ctx, {Poly(ctx), parse_here(ctx, "-2*x3"), Poly(ctx, Rat(1))});
}

VecField transcribed_f() {
  VarContext ctx = context();
  return VecField::from_polys(
      ctx,
      {parse_here(ctx,
                  "1/2*x3^4 + x2*x3^2 + 1/2*x3^2 + 1/2*x3 + 1/2*x1^2 + 1/2*x2^2 "
                  "+ 1/2*x1 + 1/2*x2"),
       parse_here(ctx,
                  "-4*x1*x3^7 + 2*x3^7 - 4*x1*x3^5 - 12*x1*x2*x3^5 + 6*x2*x3^5 "
                  "- 2*x3^5 - 5*x1*x3^4 + 5/2*x3^4 - 4*x1^3*x3^3 - 6*x1^2*x3^3 "
                  "- 12*x1*x2^2*x3^3 + 6*x2^2"),
       parse_here(ctx,
                  "x3^3 - 2*x1*x3^3 - 8*x1*x2*x3^3 - 4*x2*x3^3 - x1*x3^2 "
                  "- 6*x1*x2*x3^2 + 3*x2*x3^2 - 1/2*x3^2 - 4*x1*x2^3*x3 "
                  "+ 2*x2^3*x3 - 4*x1*x2^2*x3 - 2*x2^2*x3 - x1*x3 "
                  "- 4*x1^3*x2*x3 - 6*x1^2*x2*x3 - 2*x1*x2*x3 + 1/2*x3 - x1^3 "
                  "- 3/2*x1^2 - x1*x2^2 + 1/2*x2^2 - 1/2*x1 - x1*x2 - 1/2*x2")});
}

PolyMap chain_map() {
  VarContext ctx = context();
  return PolyMap(ctx, {parse_here(ctx, kRowOutput), parse_here(ctx, kRowFirst),
                       parse_here(ctx, kRowSecond)});
}

VecField reconstructed_f() {
  // The chain map sends the drift to (z2, z3, 0): solve J f = (rows 2, 3, 0).
  VarContext ctx = context();
  PolyMap phi = chain_map();
  auto J = jacobian(phi);
  const int n = ctx.size();
  RatMatrix a(n, std::vector<RatFn>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = RatFn(J[i][j]);
  auto sol = solve_linear(
      a, {RatFn(phi.component(1)), RatFn(phi.component(2)), RatFn::zero(ctx)});
  if (!sol) throw error("bundled example: chain map is singular");
  return VecField(ctx, *sol);
}

ControlSystem system() {
  return ControlSystem::make(context(), reconstructed_f(), input_g());
}

PolyMap chart0() {
  VarContext ctx = context();
  return invert_triangular(PolyMap(
      ctx, {parse_here(ctx, "x1"), parse_here(ctx, "x3^2 + x2"),
            parse_here(ctx, kRowSecond)}));
}

PolyMap chart1() {
  VarContext sub = context().prefix(2);
  return PolyMap(sub, {parse_poly(sub, "x1 + x1^2 + x2"),
                       parse_poly(sub, "x1 - x1^2 - x2")});
}

PolyMap chart1_extended() {
  // Transversal component last, then the identity on x3.
  VarContext sub = context().prefix(2);
  PolyMap reordered(sub, {parse_poly(sub, "x1 - x1^2 - x2"),
                          parse_poly(sub, "x1 + x1^2 + x2")});
  return extend_identity(invert_triangular(reordered), context());
}

OmegaHints omega_hints() {
  VarContext ctx = context();
  OmegaHints hints;
  hints[0] = {differential(parse_here(ctx, kRowSecond))};
  hints[1] = {KForm::coordinate(ctx, 0)};
  hints[2] = {KForm::coordinate(ctx, 1)};
  return hints;
}

ChartHints chart_hints() {
  ChartHints hints;
  hints.emplace(0, chart0());
  hints.emplace(1, chart1());
  return hints;
}

ConsistencyReport consistency_report() {
  ConsistencyReport rep;
  VarContext ctx = context();
  PolyMap phi = chain_map();
  RatFn y(phi.component(0));
  RatFn first(phi.component(1));
  RatFn second(phi.component(2));

  auto check_f = [&](const VecField& f, const std::string& label) {
    bool row1 = lie_derivative(f, y) == first;
    bool row2 = lie_derivative(f, first) == second;
    rep.checks.emplace_back(label + ": dy.f equals the first chain row",
                            row1 ? "ok" : "MISMATCH");
    rep.checks.emplace_back(label + ": d(L_f y).f equals the second chain row",
                            row2 ? "ok" : "MISMATCH");
    return row1 && row2;
  };
  rep.transcribed_ok = check_f(transcribed_f(), "transcribed f");
  rep.reconstructed_ok = check_f(reconstructed_f(), "reconstructed f");
  return rep;
}

std::string system_file_text_no_hints() {
  SystemFile sf;
  sf.vars = context();
  sf.f = reconstructed_f();
  sf.g = input_g();
  return sf.print();
}

std::string system_file_text() {
  SystemFile sf;
  sf.vars = context();
  sf.f = reconstructed_f();
  sf.g = input_g();
  sf.omega_hints = omega_hints();
  sf.phi_hints = chart_hints();
  return sf.print();
}

namespace golden {
const char* g1[3] = {
    "-1/2",
    "4*x1*x3^3 + 4*x1*x2*x3 - 2*x3^3 - 2*x2*x3 + x1 - 1/2",
    "-2*x1*x3^2 - 2*x1*x2 + x3^2 + x2",
};
const char* g2[3] = {"0", "-4*x3^3 - 4*x2*x3 - 1", "2*x3^2 + 2*x2"};
const char* nu2[3] = {"0", "1", "0"};
const char* nu1[3] = {"8*x1*x3^3 + 8*x1*x2*x3 - 4*x3^3 - 4*x2*x3 + 2*x1 - 1", "1",
                      "0"};
const char* nu0[3] = {"8*x1*x3^3 + 8*x1*x2*x3 - 4*x3^3 - 4*x2*x3 + 2*x1 - 1",
                      "4*x3^3 + 4*x2*x3 + 1", "8*x3^4 + 8*x2*x3^2 + 2*x3"};
const char* f1_chart[2] = {
    "1/2*x1^2 + 1/2*x1 + 1/2*x2 + 1/2*x3",
    "-x1^3 - 3/2*x1^2 - x1*x2 - x1*x3 - 1/2*x1 - 1/2*x2 + 1/2*x3",
};
const char* g1_chart[2] = {"-1/2", "x1 - 1/2"};
const char* output_raw = "-x1^2 - x3^2 + x1 - x2";
const char* output_canonical = "x1^2 + x3^2 - x1 + x2";
const char* chart0_inverse[3] = {"x1", "-x2^4 + 2*x2^2*x3 - x3^2 + x2",
                                 "-x2^2 + x3"};
const char* chart1_inverse[2] = {"1/2*x1 + 1/2*x2",
                                 "-1/4*x1^2 - 1/2*x1*x2 - 1/4*x2^2 + 1/2*x1 - 1/2*x2"};
const char* chain_determinant = "2";
}  // namespace golden

}  // namespace algebroid::example
