#include "algebroid/poly_map.hpp"

#include <algorithm>
#include <sstream>

#include "algebroid/errors.hpp"

namespace algebroid {

namespace {

bool is_identity(const std::vector<Poly>& comps, const VarContext& ctx) {
  for (int i = 0; i < ctx.size(); ++i)
    if (comps[i] != Poly::variable(ctx, i)) return false;
  return true;
}

}  // namespace

PolyMap::PolyMap(VarContext ctx, std::vector<Poly> components)
    : ctx_(std::move(ctx)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != ctx_.size())
    throw precondition_error("map component count must equal dimension");
  for (const auto& c : comps_) require_same_context(ctx_, c.context(), "polynomial map");
}

PolyMap::PolyMap(VarContext ctx, std::vector<Poly> components,
                 std::vector<Poly> inverse_components)
    : PolyMap(std::move(ctx), std::move(components)) {
  if (static_cast<int>(inverse_components.size()) != ctx_.size())
    throw precondition_error("inverse component count must equal dimension");
  std::vector<Poly> forward_then_back, back_then_forward;
  for (int i = 0; i < ctx_.size(); ++i) {
    forward_then_back.push_back(inverse_components[i].substitute(comps_));
    back_then_forward.push_back(comps_[i].substitute(inverse_components));
  }
  if (!is_identity(forward_then_back, ctx_) || !is_identity(back_then_forward, ctx_))
    throw precondition_error("stored inverse does not invert the map");
  inverse_ = std::move(inverse_components);
}

PolyMap PolyMap::identity(const VarContext& ctx) {
  std::vector<Poly> comps;
  for (int i = 0; i < ctx.size(); ++i) comps.push_back(Poly::variable(ctx, i));
  std::vector<Poly> inv = comps;
  return PolyMap(ctx, std::move(comps), std::move(inv));
}

PolyMap PolyMap::inverse() const {
  if (!inverse_) throw precondition_error("map has no stored inverse");
  return PolyMap(ctx_, *inverse_, comps_);
}

std::vector<Rat> PolyMap::apply(const std::vector<Rat>& point) const {
  std::vector<Rat> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c.evaluate(point));
  return out;
}

bool PolyMap::operator==(const PolyMap& o) const {
  return ctx_ == o.ctx_ && comps_ == o.comps_;
}

std::string PolyMap::to_string() const {
  std::ostringstream os;
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (i) os << "; ";
    os << comps_[i].to_string();
  }
  return os.str();
}

PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
  if (outer.dimension() != inner.dimension())
    throw precondition_error("compose: dimension mismatch");
  std::vector<Poly> comps;
  comps.reserve(outer.dimension());
  for (const auto& c : outer.components()) comps.push_back(c.substitute(inner.components()));
  if (outer.has_inverse() && inner.has_inverse()) {
    const PolyMap oi = outer.inverse();
    const PolyMap ii = inner.inverse();
    std::vector<Poly> inv;
    inv.reserve(outer.dimension());
    for (const auto& c : ii.components()) inv.push_back(c.substitute(oi.components()));
    return PolyMap(inner.context(), std::move(comps), std::move(inv));
  }
  return PolyMap(inner.context(), std::move(comps));
}

std::vector<std::vector<Poly>> jacobian(const PolyMap& m) {
  const int n = m.dimension();
  std::vector<std::vector<Poly>> J(n, std::vector<Poly>(n, Poly(m.context())));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) J[i][j] = m.component(i).partial_derivative(j);
  return J;
}

Poly poly_matrix_determinant(std::vector<std::vector<Poly>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) throw precondition_error("empty matrix");
  const VarContext ctx = a[0][0].context();
  // Bareiss fraction-free elimination; every division is exact.
  Poly prev(ctx, Rat(1));
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k].is_zero()) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (!a[r][k].is_zero()) {
          p = r;
          break;
        }
      if (p < 0) return Poly(ctx);  // singular
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = poly_divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
    prev = a[k][k];
  }
  Poly det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

Poly jacobian_determinant(const PolyMap& m) {
  return poly_matrix_determinant(jacobian(m));
}

namespace {

// State of the triangular back-substitution: equations over the combined
// context [x1..xn, #1..#n], where #i stands for the i-th image coordinate.
struct InversionState {
  std::vector<Poly> equations;          // remaining, == 0
  std::vector<std::optional<Poly>> solution;  // per variable, in combined ctx
  int solved = 0;
};

// variable j occurs in p linearly with a constant coefficient iff
// d p / d x_j is a nonzero constant.
std::optional<Rat> constant_linear_coefficient(const Poly& p, int j) {
  Poly d = p.partial_derivative(j);
  if (d.is_zero() || !d.is_constant()) return std::nullopt;
  return d.constant_term();
}

Poly substitute_one(const Poly& p, int var, const Poly& value) {
  if (p.degree_in(var) <= 0) return p;
  std::vector<Poly> args;
  const VarContext& ctx = p.context();
  args.reserve(ctx.size());
  for (int k = 0; k < ctx.size(); ++k)
    args.push_back(k == var ? value : Poly::variable(ctx, k));
  return p.substitute(args);
}

bool search(InversionState& st, int n, bool exhaustive, long& budget) {
  if (st.solved == n) return true;
  if (--budget < 0) return false;
  for (size_t e = 0; e < st.equations.size(); ++e) {
    for (int j = 0; j < n; ++j) {
      if (st.solution[j]) continue;
      auto c = constant_linear_coefficient(st.equations[e], j);
      if (!c) continue;
      // equations[e] = c*x_j + rest  ==>  x_j = -rest/c
      const VarContext& ctx = st.equations[e].context();
      Poly rest = st.equations[e] - Poly::variable(ctx, j).scaled(*c);
      Poly value = rest.scaled(Rat(-1) / *c);
      InversionState next;
      next.solution = st.solution;
      next.solution[j] = value;
      next.solved = st.solved + 1;
      for (size_t k = 0; k < st.equations.size(); ++k) {
        if (k == e) continue;
        next.equations.push_back(substitute_one(st.equations[k], j, value));
      }
      for (auto& s : next.solution)
        if (s) s = substitute_one(*s, j, value);
      if (search(next, n, exhaustive, budget)) {
        st = std::move(next);
        return true;
      }
      if (!exhaustive) return false;
    }
  }
  return false;
}

}  // namespace

PolyMap invert_triangular(const PolyMap& m) {
  if (m.has_inverse()) return m;
  const VarContext& ctx = m.context();
  const int n = ctx.size();
  std::vector<std::string> combined = ctx.names();
  for (int i = 0; i < n; ++i) combined.push_back("#" + std::to_string(i));
  VarContext cctx(std::move(combined));

  InversionState st;
  st.solution.assign(n, std::nullopt);
  for (int i = 0; i < n; ++i)
    st.equations.push_back(m.component(i).lift(cctx) - Poly::variable(cctx, n + i));

  const bool exhaustive = n <= 6;
  long budget = 200000;
  if (!search(st, n, exhaustive, budget))
    throw inversion_error("no triangular elimination order inverts the map");

  std::vector<Poly> inv;
  inv.reserve(n);
  for (int j = 0; j < n; ++j) {
    const Poly& s = *st.solution[j];
    std::vector<Term> terms;
    for (const auto& t : s.terms()) {
      for (int k = 0; k < n; ++k)
        if (t.exp[k] != 0)
          throw inversion_error("inverse still references source variables");
      terms.push_back({Exponents(t.exp.begin() + n, t.exp.end()), t.coeff});
    }
    inv.push_back(Poly::from_terms(ctx, std::move(terms)));
  }
  return PolyMap(ctx, m.components(), std::move(inv));
}

PolyMap extend_identity(const PolyMap& m, const VarContext& wider) {
  const int k = m.dimension();
  if (wider.size() < k) throw precondition_error("extend: target too small");
  if (m.context() != wider.prefix(k))
    throw precondition_error("extend: map context is not a prefix of the target");
  std::vector<Poly> comps;
  for (const auto& c : m.components()) comps.push_back(c.lift(wider));
  for (int i = k; i < wider.size(); ++i) comps.push_back(Poly::variable(wider, i));
  if (m.has_inverse()) {
    const PolyMap back = m.inverse();
    std::vector<Poly> inv;
    for (const auto& c : back.components()) inv.push_back(c.lift(wider));
    for (int i = k; i < wider.size(); ++i) inv.push_back(Poly::variable(wider, i));
    return PolyMap(wider, std::move(comps), std::move(inv));
  }
  return PolyMap(wider, std::move(comps));
}

}  // namespace algebroid
