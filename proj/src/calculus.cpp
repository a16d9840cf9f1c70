#include "algebroid/calculus.hpp"

#include <algorithm>

#include "algebroid/errors.hpp"
#include "algebroid/linalg.hpp"

namespace algebroid {

RatFn pair_form_field(const KForm& omega, const VecField& m) {
  require_same_context(omega.context(), m.context(), "pairing");
  if (omega.degree() != 1) throw precondition_error("pairing requires a 1-form");
  RatFn acc = RatFn::zero(m.context());
  for (const auto& [tuple, c] : omega.terms()) acc += c * m.component(tuple[0]);
  return acc;
}

VecField lie_bracket(const VecField& a, const VecField& b) {
  require_same_context(a.context(), b.context(), "Lie bracket");
  const int n = a.dimension();
  // Polynomial fields take the direct route; otherwise accumulate over a
  // shared denominator and normalize once per component.
  bool polynomial = true;
  for (int i = 0; i < n && polynomial; ++i)
    polynomial = a.component(i).is_polynomial() && b.component(i).is_polynomial();
  std::vector<RatFn> out;
  out.reserve(n);
  if (polynomial) {
    for (int i = 0; i < n; ++i) {
      Poly acc(a.context());
      for (int j = 0; j < n; ++j) {
        acc += b.component(i).num().partial_derivative(j) * a.component(j).num();
        acc -= a.component(i).num().partial_derivative(j) * b.component(j).num();
      }
      out.emplace_back(std::move(acc));
    }
    return VecField(a.context(), std::move(out));
  }
  // Clear denominators fieldwise: a = ahat / Da, b = bhat / Db with
  // polynomial vectors ahat, bhat. Then
  //   [a,b]_i = sum_j ((d_j bhat_i Db - bhat_i d_j Db) ahat_j Da
  //           - (d_j ahat_i Da - ahat_i d_j Da) bhat_j Db) / (Da^2 Db^2),
  // one normalization per component.
  auto lcm_fold = [](const std::vector<RatFn>& comps) {
    Poly acc(comps.front().context(), Rat(1));
    for (const auto& c : comps) {
      const Poly& d = c.den();
      if (d.is_one()) continue;
      if (acc == d) continue;
      acc = poly_divexact(acc * d, poly_gcd(acc, d));
    }
    return acc;
  };
  Poly Da = lcm_fold(a.components());
  Poly Db = lcm_fold(b.components());
  std::vector<Poly> ahat, bhat;
  for (int j = 0; j < n; ++j) {
    ahat.push_back(a.component(j).num() * poly_divexact(Da, a.component(j).den()));
    bhat.push_back(b.component(j).num() * poly_divexact(Db, b.component(j).den()));
  }
  std::vector<Poly> dDa, dDb;
  for (int j = 0; j < n; ++j) {
    dDa.push_back(Da.partial_derivative(j));
    dDb.push_back(Db.partial_derivative(j));
  }
  Poly den = Da * Da * Db * Db;
  for (int i = 0; i < n; ++i) {
    Poly num(a.context());
    for (int j = 0; j < n; ++j) {
      num += (bhat[i].partial_derivative(j) * Db - bhat[i] * dDb[j]) * ahat[j] * Da;
      num -= (ahat[i].partial_derivative(j) * Da - ahat[i] * dDa[j]) * bhat[j] * Db;
    }
    out.emplace_back(std::move(num), den);
  }
  return VecField(a.context(), std::move(out));
}

RatFn lie_derivative(const VecField& f, const RatFn& h) {
  RatFn acc = RatFn::zero(f.context());
  for (int j = 0; j < f.dimension(); ++j)
    acc += h.partial_derivative(j) * f.component(j);
  return acc;
}

KForm differential(const RatFn& h) {
  const VarContext& ctx = h.context();
  std::vector<RatFn> coeffs;
  coeffs.reserve(ctx.size());
  for (int j = 0; j < ctx.size(); ++j) coeffs.push_back(h.partial_derivative(j));
  return KForm::one_form(ctx, std::move(coeffs));
}

KForm differential(const Poly& h) { return differential(RatFn(h)); }

KForm exterior_derivative(const KForm& omega) {
  if (omega.degree() > 2)
    throw precondition_error("exterior derivative stored up to degree 3 only");
  const VarContext& ctx = omega.context();
  KForm out(ctx, omega.degree() + 1);
  for (const auto& [tuple, c] : omega.terms()) {
    for (int j = 0; j < ctx.size(); ++j) {
      if (std::find(tuple.begin(), tuple.end(), j) != tuple.end()) continue;
      RatFn dc = c.partial_derivative(j);
      if (dc.is_zero()) continue;
      // insert j; sign (-1)^position
      std::vector<int> ext = tuple;
      auto it = std::lower_bound(ext.begin(), ext.end(), j);
      int pos = static_cast<int>(it - ext.begin());
      ext.insert(it, j);
      out.add_term(ext, (pos % 2 == 0) ? dc : -dc);
    }
  }
  return out;
}

KForm wedge_21(const KForm& a, const KForm& b) {
  require_same_context(a.context(), b.context(), "wedge");
  if (a.degree() != 2 || b.degree() != 1)
    throw precondition_error("wedge expects a 2-form and a 1-form");
  KForm out(a.context(), 3);
  for (const auto& [ij, ca] : a.terms()) {
    for (const auto& [kk, cb] : b.terms()) {
      int i = ij[0], j = ij[1], k = kk[0];
      if (k == i || k == j) continue;
      std::vector<int> tuple;
      int sign;
      if (k < i) {
        tuple = {k, i, j};
        sign = 1;
      } else if (k < j) {
        tuple = {i, k, j};
        sign = -1;
      } else {
        tuple = {i, j, k};
        sign = 1;
      }
      RatFn c = ca * cb;
      out.add_term(tuple, sign > 0 ? c : -c);
    }
  }
  return out;
}

bool is_integrable(const KForm& omega) {
  if (omega.degree() != 1)
    throw precondition_error("integrability test requires a 1-form");
  return wedge_21(exterior_derivative(omega), omega).is_zero();
}

VecField pushforward(const PolyMap& phi, const VecField& m) {
  require_same_context(phi.context(), m.context(), "pushforward");
  const PolyMap with_inv = phi.has_inverse() ? phi : invert_triangular(phi);
  const std::vector<Poly> inv = with_inv.inverse().components();
  auto J = jacobian(phi);
  const int n = m.dimension();
  std::vector<RatFn> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    RatFn c = RatFn::zero(m.context());
    for (int j = 0; j < n; ++j) c += RatFn(J[i][j]) * m.component(j);
    out.push_back(c.substitute(inv));
  }
  return VecField(m.context(), std::move(out));
}

KForm pullback(const PolyMap& phi, const KForm& omega) {
  require_same_context(phi.context(), omega.context(), "pullback");
  if (omega.degree() != 1) throw precondition_error("pullback expects a 1-form");
  const PolyMap with_inv = phi.has_inverse() ? phi : invert_triangular(phi);
  const std::vector<Poly> inv = with_inv.inverse().components();
  auto J = jacobian(phi);
  const int n = phi.dimension();
  // rho . J = omega  <=>  J^T rho^T = omega^T
  RatMatrix jt(n, std::vector<RatFn>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) jt[i][j] = RatFn(J[j][i]);
  auto rho = solve_linear(jt, omega.coefficient_vector());
  if (!rho) throw precondition_error("pullback: singular Jacobian");
  std::vector<RatFn> out;
  out.reserve(n);
  for (auto& c : *rho) out.push_back(c.substitute(inv));
  return KForm::one_form(omega.context(), std::move(out));
}

Poly integrate_exact(const KForm& nu) {
  if (nu.degree() != 1) throw precondition_error("potential requires a 1-form");
  if (!exterior_derivative(nu).is_zero()) {
    throw not_exact_error("form is not closed",
                          exterior_derivative(nu).to_string());
  }
  const VarContext& ctx = nu.context();
  std::vector<Term> terms;
  for (const auto& [tuple, c] : nu.terms()) {
    if (!c.is_polynomial())
      throw precondition_error("potential requires polynomial coefficients");
    int i = tuple[0];
    for (const auto& t : c.num().terms()) {
      unsigned total = 0;
      for (unsigned e : t.exp) total += e;
      Term out{t.exp, t.coeff / Rat(static_cast<long>(total) + 1)};
      out.exp[i] += 1;
      terms.push_back(std::move(out));
    }
  }
  return Poly::from_terms(ctx, std::move(terms));
}

}  // namespace algebroid
