#pragma once

#include <random>

#include "algebroid/algebroid_ctx.hpp"
#include "algebroid/calculus.hpp"
#include "algebroid/poly.hpp"
#include "algebroid/vec_field.hpp"

namespace testgen {

using namespace algebroid;

// Deterministic generators for the property suites: sparse polynomials with
// small integer coefficients, fields and closed 1-forms built from them.

inline Poly random_poly(std::mt19937_64& rng, const VarContext& ctx,
                        int max_degree, int terms = 3) {
  std::uniform_int_distribution<int> coeff(-4, 4);
  std::uniform_int_distribution<int> deg(0, max_degree);
  std::vector<Term> ts;
  for (int t = 0; t < terms; ++t) {
    int c = coeff(rng);
    if (c == 0) continue;
    Exponents e(ctx.size(), 0);
    int budget = deg(rng);
    std::uniform_int_distribution<int> pick(0, ctx.size() - 1);
    for (int d = 0; d < budget; ++d) e[pick(rng)] += 1;
    ts.push_back({std::move(e), Rat(c)});
  }
  return Poly::from_terms(ctx, std::move(ts));
}

inline Poly random_nonzero_poly(std::mt19937_64& rng, const VarContext& ctx,
                                int max_degree, int terms = 3) {
  for (;;) {
    Poly p = random_poly(rng, ctx, max_degree, terms);
    if (!p.is_zero()) return p;
  }
}

inline VecField random_field(std::mt19937_64& rng, const VarContext& ctx,
                             int max_degree = 2) {
  std::vector<Poly> comps;
  for (int i = 0; i < ctx.size(); ++i)
    comps.push_back(random_poly(rng, ctx, max_degree));
  return VecField::from_polys(ctx, std::move(comps));
}

// Exact (hence closed and integrable) 1-form with coefficients of degree
// <= max_degree.
inline KForm random_closed_form(std::mt19937_64& rng, const VarContext& ctx,
                                int max_degree = 2) {
  return differential(random_nonzero_poly(rng, ctx, max_degree + 1, 4));
}

// Context with omega.g symbolically nonzero.
inline AlgebroidContext random_context(std::mt19937_64& rng, const VarContext& ctx,
                                       int max_degree = 2) {
  for (;;) {
    VecField g = random_field(rng, ctx, max_degree);
    if (g.is_zero()) continue;
    KForm omega = random_closed_form(rng, ctx, max_degree);
    if (pair_form_field(omega, g).is_zero()) continue;
    return AlgebroidContext::make(std::move(g), std::move(omega));
  }
}

}  // namespace testgen
