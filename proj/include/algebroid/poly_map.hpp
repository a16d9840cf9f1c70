#pragma once

#include <optional>
#include <string>
#include <vector>

#include "algebroid/poly.hpp"
#include "algebroid/ratfn.hpp"

namespace algebroid {

// Polynomial coordinate map x -> z on a fixed context, with an optional
// exact polynomial inverse. When the inverse is present both compositions
// are verified to be the identity at construction time.
class PolyMap {
 public:
  PolyMap() = default;
  PolyMap(VarContext ctx, std::vector<Poly> components);
  PolyMap(VarContext ctx, std::vector<Poly> components,
          std::vector<Poly> inverse_components);

  static PolyMap identity(const VarContext& ctx);

  const VarContext& context() const { return ctx_; }
  const std::vector<Poly>& components() const { return comps_; }
  const Poly& component(int i) const { return comps_[i]; }
  int dimension() const { return static_cast<int>(comps_.size()); }

  bool has_inverse() const { return inverse_.has_value(); }
  PolyMap inverse() const;  // throws if absent

  Poly apply(const Poly& p) const { return p.substitute(comps_); }
  RatFn apply(const RatFn& r) const { return r.substitute(comps_); }
  std::vector<Rat> apply(const std::vector<Rat>& point) const;

  bool operator==(const PolyMap& o) const;
  bool operator!=(const PolyMap& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  VarContext ctx_;
  std::vector<Poly> comps_;
  std::optional<std::vector<Poly>> inverse_;
};

// outer after inner, componentwise substitution. Inverses compose when both
// maps carry one.
PolyMap compose(const PolyMap& outer, const PolyMap& inner);

std::vector<std::vector<Poly>> jacobian(const PolyMap& m);

// Exact determinant of the Jacobian matrix (fraction-free elimination).
Poly jacobian_determinant(const PolyMap& m);

Poly poly_matrix_determinant(std::vector<std::vector<Poly>> m);

// Exact inversion by back-substitution: repeatedly solve a component in
// which some variable occurs linearly with a constant coefficient, and
// substitute the solution everywhere. The search backtracks over all
// elimination orders for n <= 6 and runs greedily beyond. Throws
// inversion_error when no order succeeds.
PolyMap invert_triangular(const PolyMap& m);

// Lift a map on a prefix of `wider` to all of it, acting as the identity on
// the remaining coordinates.
PolyMap extend_identity(const PolyMap& m, const VarContext& wider);

}  // namespace algebroid
