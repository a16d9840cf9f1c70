#pragma once

#include <string>
#include <vector>

#include "algebroid/ratfn.hpp"

namespace algebroid {

// Vector field as an n-tuple of rational-function components over a shared
// context.
class VecField {
 public:
  VecField() = default;
  VecField(VarContext ctx, std::vector<RatFn> components);

  static VecField zero(const VarContext& ctx);
  static VecField from_polys(const VarContext& ctx, std::vector<Poly> components);
  // Coordinate direction e_i.
  static VecField coordinate(const VarContext& ctx, int i);

  const VarContext& context() const { return ctx_; }
  const std::vector<RatFn>& components() const { return comps_; }
  const RatFn& component(int i) const { return comps_[i]; }
  int dimension() const { return static_cast<int>(comps_.size()); }

  bool is_zero() const;

  VecField operator+(const VecField& o) const;
  VecField operator-(const VecField& o) const;
  VecField operator-() const;
  VecField scaled(const RatFn& a) const;

  bool operator==(const VecField& o) const;
  bool operator!=(const VecField& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  VarContext ctx_;
  std::vector<RatFn> comps_;
};

}  // namespace algebroid
