#pragma once

#include "algebroid/kform.hpp"
#include "algebroid/poly_map.hpp"
#include "algebroid/vec_field.hpp"

namespace algebroid {

// <omega, m> = sum_i omega_i m_i for a 1-form.
RatFn pair_form_field(const KForm& omega, const VecField& m);

// [a, b] = J(b) a - J(a) b.
VecField lie_bracket(const VecField& a, const VecField& b);

// Derivative of a scalar along a field, L_f h.
RatFn lie_derivative(const VecField& f, const RatFn& h);

// dh as a 1-form.
KForm differential(const RatFn& h);
KForm differential(const Poly& h);

// d on forms of degree <= 2.
KForm exterior_derivative(const KForm& omega);

// (2-form) wedge (1-form) -> 3-form.
KForm wedge_21(const KForm& a, const KForm& b);

// d omega ^ omega == 0 for a 1-form.
bool is_integrable(const KForm& omega);

// Phi_* m = (dPhi/dx . m) o Phi^{-1}; the inverse is taken from the map or
// computed by triangular inversion.
VecField pushforward(const PolyMap& phi, const VecField& m);

// omega . (dPhi/dx)^{-1} o Phi^{-1} for a 1-form.
KForm pullback(const PolyMap& phi, const KForm& omega);

// Potential P with dP = nu and P(0) = 0 for a closed 1-form with polynomial
// coefficients, via the line-segment homotopy from the origin computed
// term by term.
Poly integrate_exact(const KForm& nu);

}  // namespace algebroid
