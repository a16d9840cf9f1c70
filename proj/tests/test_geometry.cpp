#include <random>

#include "algebroid/calculus.hpp"
#include "algebroid/errors.hpp"
#include "algebroid/expr_parse.hpp"
#include "algebroid/poly_map.hpp"
#include "doctest.h"
#include "support/generators.hpp"

using namespace algebroid;

namespace {
const VarContext ctx3 = VarContext::numbered("x", 3);
const VarContext ctx2 = VarContext::numbered("x", 2);
Poly P(const char* s) { return parse_poly(ctx3, s); }
VecField VF(const char* a, const char* b, const char* c) {
  return VecField::from_polys(ctx3, {P(a), P(b), P(c)});
}

// Independent determinant oracle: expansion over all permutations.
Poly permutation_determinant(const std::vector<std::vector<Poly>>& m) {
  const int n = static_cast<int>(m.size());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Poly acc(m[0][0].context());
  do {
    int sign = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) sign = -sign;
    Poly prod(m[0][0].context(), Rat(sign));
    for (int i = 0; i < n; ++i) prod *= m[i][perm[i]];
    acc += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}
}  // namespace

TEST_CASE("Lie bracket basics") {
  CHECK(lie_bracket(VecField::coordinate(ctx3, 0), VecField::coordinate(ctx3, 1))
            .is_zero());
  // one-variable hand expansion: [x d/dx, d/dx] = -d/dx
  VecField xddx = VecField::from_polys(ctx3, {P("x1"), P("0"), P("0")});
  VecField ddx = VecField::coordinate(ctx3, 0);
  CHECK(lie_bracket(xddx, ddx) == -ddx);
}

TEST_CASE("bracket is antisymmetric and satisfies Jacobi") {
  std::mt19937_64 rng(0x1234);
  for (int i = 0; i < 60; ++i) {
    VecField a = testgen::random_field(rng, ctx3, 3);
    VecField b = testgen::random_field(rng, ctx3, 3);
    VecField c = testgen::random_field(rng, ctx3, 2);
    CHECK(lie_bracket(a, b) == -lie_bracket(b, a));
    VecField jac = lie_bracket(a, lie_bracket(b, c)) +
                   lie_bracket(b, lie_bracket(c, a)) +
                   lie_bracket(c, lie_bracket(a, b));
    CHECK(jac.is_zero());
  }
}

TEST_CASE("pairing of forms with fields") {
  VecField g = VF("0", "-2*x3", "1");
  CHECK(pair_form_field(KForm::coordinate(ctx3, 1), g) == RatFn(P("-2*x3")));
  KForm omega0 = differential(P("x3^4 + 2*x2*x3^2 + x3 + x2^2"));
  CHECK(pair_form_field(omega0, g) == RatFn::constant(ctx3, Rat(1)));
  VecField g2 = VF("0", "-4*x3^3 - 4*x2*x3 - 1", "2*x3^2 + 2*x2");
  CHECK(pair_form_field(KForm::coordinate(ctx3, 1), g2) ==
        RatFn(P("-4*x3^3 - 4*x2*x3 - 1")));
  CHECK_THROWS_AS(pair_form_field(KForm(ctx3, 2), g), precondition_error);
}

TEST_CASE("exterior derivative") {
  KForm omega0 = differential(P("x3^4 + 2*x2*x3^2 + x3 + x2^2"));
  CHECK(exterior_derivative(omega0).is_zero());  // exact forms are closed
  // d(x1 dx2) = dx1 ^ dx2
  KForm w(ctx3, 1);
  w.add_term({1}, RatFn(P("x1")));
  KForm dw = exterior_derivative(w);
  KForm expect(ctx3, 2);
  expect.add_term({0, 1}, RatFn::constant(ctx3, Rat(1)));
  CHECK(dw == expect);
  CHECK_THROWS_AS(exterior_derivative(KForm(ctx3, 3)), precondition_error);
}

TEST_CASE("d of d vanishes on random 1-forms") {
  std::mt19937_64 rng(0x5678);
  for (int i = 0; i < 100; ++i) {
    std::vector<RatFn> coeffs;
    for (int k = 0; k < 3; ++k)
      coeffs.emplace_back(testgen::random_poly(rng, ctx3, 2));
    KForm w = KForm::one_form(ctx3, coeffs);
    CHECK(exterior_derivative(exterior_derivative(w)).is_zero());
  }
}

TEST_CASE("wedge of a 2-form with a 1-form") {
  KForm dx12(ctx3, 2);
  dx12.add_term({0, 1}, RatFn::constant(ctx3, Rat(1)));
  KForm vol = wedge_21(dx12, KForm::coordinate(ctx3, 2));
  CHECK(vol.coefficient({0, 1, 2}) == RatFn::constant(ctx3, Rat(1)));
  CHECK(wedge_21(dx12, KForm::coordinate(ctx3, 0)).is_zero());
  // hand expansion in 3 variables: d(dx1 + x1 dx2) ^ (dx1 + x1 dx2) = x1 dx1^dx2 ... = 0? no:
  KForm w(ctx3, 1);
  w.add_term({0}, RatFn::constant(ctx3, Rat(1)));
  w.add_term({1}, RatFn(P("x1")));
  KForm dww = wedge_21(exterior_derivative(w), w);
  CHECK(dww.is_zero());  // dw = dx1^dx2, dw^w = x1 dx1^dx2^dx2 + dx1^dx2^dx1 = 0

  // and a genuinely nonzero product
  KForm v(ctx3, 1);
  v.add_term({0}, RatFn(P("x2")));
  v.add_term({2}, RatFn::constant(ctx3, Rat(1)));
  KForm dvv = wedge_21(exterior_derivative(v), v);
  CHECK(!dvv.is_zero());

  // degree-3 wedge collapses in two variables
  KForm a2(ctx2, 2);
  a2.add_term({0, 1}, RatFn::constant(ctx2, Rat(1)));
  KForm b1(ctx2, 1);
  b1.add_term({0}, RatFn(parse_poly(ctx2, "x2")));
  CHECK(wedge_21(a2, b1).is_zero());
}

TEST_CASE("integrability verdicts") {
  CHECK(is_integrable(differential(P("x3^4 + 2*x2*x3^2 + x3 + x2^2"))));
  CHECK(is_integrable(KForm::coordinate(ctx3, 0)));
  KForm bad(ctx3, 1);
  bad.add_term({0}, RatFn(P("x2")));
  bad.add_term({2}, RatFn::constant(ctx3, Rat(1)));
  CHECK(!is_integrable(bad));  // d(x2 dx1 + dx3) ^ (x2 dx1 + dx3) != 0
  // every 1-form in two variables is integrable
  KForm any2(ctx2, 1);
  any2.add_term({0}, RatFn(parse_poly(ctx2, "x2^2")));
  any2.add_term({1}, RatFn(parse_poly(ctx2, "x1")));
  CHECK(is_integrable(any2));
}

TEST_CASE("pushforward of the input field through the first chart") {
  PolyMap phi0 = invert_triangular(
      PolyMap(ctx3, {P("x1"), P("x3^2 + x2"), P("x3^4 + 2*x2*x3^2 + x3 + x2^2")}));
  VecField g = VF("0", "-2*x3", "1");
  VecField pushed = pushforward(phi0, g);
  CHECK(pushed == VF("0", "0", "1"));
  CHECK(pushforward(PolyMap::identity(ctx3), g) == g);
}

TEST_CASE("pushforward chain rule and pullback duality on random data") {
  std::mt19937_64 rng(0x9e3779b9);
  PolyMap phi = invert_triangular(
      PolyMap(ctx3, {P("x1 + x2^2"), P("x2 + x3^2"), P("x3")}));
  PolyMap psi = invert_triangular(
      PolyMap(ctx3, {P("x1"), P("x2 + x1^2"), P("x3 - 2*x1")}));
  for (int i = 0; i < 25; ++i) {
    VecField m = testgen::random_field(rng, ctx3, 2);
    // functoriality
    CHECK(pushforward(compose(phi, psi), m) ==
          pushforward(phi, pushforward(psi, m)));
    // duality with the pullback
    std::vector<RatFn> coeffs;
    for (int k = 0; k < 3; ++k)
      coeffs.emplace_back(testgen::random_poly(rng, ctx3, 2));
    KForm w = KForm::one_form(ctx3, coeffs);
    RatFn lhs = pair_form_field(pullback(phi, w), pushforward(phi, m));
    RatFn rhs = pair_form_field(w, m).substitute(phi.inverse().components());
    CHECK(lhs == rhs);
  }
  CHECK(pullback(PolyMap::identity(ctx3), KForm::coordinate(ctx3, 1)) ==
        KForm::coordinate(ctx3, 1));
}

TEST_CASE("pullback preserves integrability") {
  std::mt19937_64 rng(0xabcdef);
  PolyMap phi = invert_triangular(
      PolyMap(ctx3, {P("x1 + x3^2"), P("x2 - x1^2"), P("x3")}));
  for (int i = 0; i < 25; ++i) {
    KForm w = testgen::random_closed_form(rng, ctx3, 2);
    CHECK(is_integrable(pullback(phi, w)));
  }
}

TEST_CASE("potential integration") {
  Poly potential = P("x3^4 + 2*x2*x3^2 + x3 + x2^2");
  CHECK(integrate_exact(differential(potential)) == potential);
  CHECK(integrate_exact(KForm::coordinate(ctx3, 0)) == P("x1"));
  KForm not_closed(ctx3, 1);
  not_closed.add_term({0}, RatFn(P("x2")));
  CHECK_THROWS_AS(integrate_exact(not_closed), not_exact_error);
  KForm rational(ctx3, 1);
  rational.add_term({0}, RatFn(Poly(ctx3, Rat(1)), P("x1 + 1")));
  CHECK_THROWS_AS(integrate_exact(rational), precondition_error);
}

TEST_CASE("potential integration inverts d on random closed forms") {
  std::mt19937_64 rng(0x777);
  for (int i = 0; i < 100; ++i) {
    KForm nu = testgen::random_closed_form(rng, ctx3, 2);
    CHECK(differential(RatFn(integrate_exact(nu))) == nu);
  }
}

namespace {
// Evaluate a 2-form on a pair of fields.
RatFn two_form_on(const KForm& w, const VecField& a, const VecField& b) {
  RatFn acc = RatFn::zero(a.context());
  for (const auto& [ij, c] : w.terms()) {
    int i = ij[0], j = ij[1];
    acc += c * (a.component(i) * b.component(j) - a.component(j) * b.component(i));
  }
  return acc;
}
}  // namespace

TEST_CASE("Cartan identity for the exterior derivative") {
  // d w (f1, f2) = f1(w f2) - f2(w f1) - w([f1, f2]); for closed w the first
  // two terms alone give w([f1, f2]).
  std::mt19937_64 rng(0xcab);
  for (int i = 0; i < 60; ++i) {
    std::vector<RatFn> coeffs;
    for (int k = 0; k < 3; ++k)
      coeffs.emplace_back(testgen::random_poly(rng, ctx3, 2));
    KForm w = KForm::one_form(ctx3, coeffs);
    VecField f1 = testgen::random_field(rng, ctx3, 2);
    VecField f2 = testgen::random_field(rng, ctx3, 2);
    RatFn lhs = two_form_on(exterior_derivative(w), f1, f2);
    RatFn rhs = lie_derivative(f1, pair_form_field(w, f2)) -
                lie_derivative(f2, pair_form_field(w, f1)) -
                pair_form_field(w, lie_bracket(f1, f2));
    CHECK(lhs == rhs);
    if (exterior_derivative(w).is_zero()) {
      CHECK(pair_form_field(w, lie_bracket(f1, f2)) ==
            lie_derivative(f1, pair_form_field(w, f2)) -
                lie_derivative(f2, pair_form_field(w, f1)));
    }
  }
}

TEST_CASE("composition of maps") {
  PolyMap phi0 = invert_triangular(
      PolyMap(ctx3, {P("x1"), P("x3^2 + x2"), P("x3^4 + 2*x2*x3^2 + x3 + x2^2")}));
  CHECK(compose(phi0.inverse(), phi0) == PolyMap::identity(ctx3));
  CHECK(compose(PolyMap::identity(ctx3), phi0) == phi0);
  VarContext other = VarContext::numbered("x", 2);
  CHECK_THROWS_AS(compose(PolyMap::identity(other), phi0), precondition_error);
}

TEST_CASE("jacobian determinants, with a permutation-expansion oracle") {
  CHECK(jacobian_determinant(PolyMap::identity(ctx3)) == Poly(ctx3, Rat(1)));
  PolyMap phi0(ctx3, {P("x1"), P("x3^2 + x2"), P("x3^4 + 2*x2*x3^2 + x3 + x2^2")});
  CHECK(jacobian_determinant(phi0) == Poly(ctx3, Rat(1)));
  CHECK(permutation_determinant(jacobian(phi0)) == Poly(ctx3, Rat(1)));

  PolyMap chain(ctx3, {P("x1 - x1^2 - x2 - x3^2"), P("x1^2 + x1 + x3^2 + x2"),
                       P("x3^4 + 2*x2*x3^2 + x3 + x2^2")});
  CHECK(jacobian_determinant(chain) == Poly(ctx3, Rat(2)));
  CHECK(permutation_determinant(jacobian(chain)) == Poly(ctx3, Rat(2)));

  std::mt19937_64 rng(0x2468);
  for (int i = 0; i < 20; ++i) {
    std::vector<Poly> comps;
    for (int k = 0; k < 3; ++k) comps.push_back(testgen::random_poly(rng, ctx3, 2));
    PolyMap m(ctx3, std::move(comps));
    CHECK(jacobian_determinant(m) == permutation_determinant(jacobian(m)));
  }
}

TEST_CASE("triangular inversion") {
  PolyMap phi0 = invert_triangular(
      PolyMap(ctx3, {P("x1"), P("x3^2 + x2"), P("x3^4 + 2*x2*x3^2 + x3 + x2^2")}));
  PolyMap inv = phi0.inverse();
  CHECK(inv.component(0) == P("x1"));
  CHECK(inv.component(1) == P("-x2^4 + 2*x2^2*x3 + x2 - x3^2"));
  CHECK(inv.component(2) == P("x3 - x2^2"));

  CHECK(invert_triangular(PolyMap::identity(ctx3)) == PolyMap::identity(ctx3));

  // the two-variable chart extended by the identity inverts as written down
  VarContext c2 = ctx3.prefix(2);
  PolyMap phi1(c2, {parse_poly(c2, "x1 + x1^2 + x2"), parse_poly(c2, "x1 - x1^2 - x2")});
  PolyMap ext = invert_triangular(extend_identity(phi1, ctx3));
  PolyMap extinv = ext.inverse();
  CHECK(extinv.component(0) == P("1/2*x1 + 1/2*x2"));
  CHECK(extinv.component(1) ==
        P("-1/4*x1^2 - 1/2*x2*x1 + 1/2*x1 - 1/4*x2^2 - 1/2*x2"));
  CHECK(extinv.component(2) == P("x3"));

  // round trip whenever inversion succeeds
  CHECK(compose(ext.inverse(), ext) == PolyMap::identity(ctx3));

  VarContext c2b = VarContext::numbered("x", 2);
  CHECK_THROWS_AS(
      invert_triangular(PolyMap(c2b, {parse_poly(c2b, "x1^2"), parse_poly(c2b, "x2")})),
      inversion_error);
}

TEST_CASE("inversion handles the full output chain") {
  PolyMap chain(ctx3, {P("x1 - x1^2 - x2 - x3^2"), P("x1^2 + x1 + x3^2 + x2"),
                       P("x3^4 + 2*x2*x3^2 + x3 + x2^2")});
  PolyMap inverted = invert_triangular(chain);
  CHECK(compose(inverted.inverse(), inverted) == PolyMap::identity(ctx3));
  CHECK(compose(inverted, inverted.inverse()) == PolyMap::identity(ctx3));
}
