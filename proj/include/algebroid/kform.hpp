#pragma once

#include <map>
#include <string>
#include <vector>

#include "algebroid/ratfn.hpp"

namespace algebroid {

// Differential k-form, k in {1,2,3}, stored on strictly increasing index
// tuples with rational-function coefficients. A degree above the dimension
// is representable and necessarily the zero form, which is what the wedge
// of maximal forms produces in low dimension.
class KForm {
 public:
  KForm() = default;
  KForm(VarContext ctx, int degree);

  static KForm one_form(const VarContext& ctx, std::vector<RatFn> coefficients);
  static KForm one_form_polys(const VarContext& ctx, std::vector<Poly> coefficients);
  // dx_i
  static KForm coordinate(const VarContext& ctx, int i);

  const VarContext& context() const { return ctx_; }
  int degree() const { return degree_; }
  bool is_zero() const { return coeffs_.empty(); }

  // Coefficient on a strictly increasing tuple (zero if absent).
  RatFn coefficient(const std::vector<int>& tuple) const;
  // Adds c on the tuple, which must be strictly increasing.
  void add_term(const std::vector<int>& tuple, const RatFn& c);

  const std::map<std::vector<int>, RatFn>& terms() const { return coeffs_; }

  // Degree-1 coefficients as a dense vector.
  std::vector<RatFn> coefficient_vector() const;

  KForm operator+(const KForm& o) const;
  KForm operator-(const KForm& o) const;
  KForm operator-() const;
  KForm scaled(const RatFn& a) const;

  bool operator==(const KForm& o) const;
  bool operator!=(const KForm& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  VarContext ctx_;
  int degree_ = 1;
  std::map<std::vector<int>, RatFn> coeffs_;
};

}  // namespace algebroid
