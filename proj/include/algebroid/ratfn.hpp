#pragma once

#include <string>
#include <vector>

#include "algebroid/poly.hpp"

namespace algebroid {

// Normalized rational function: gcd(num, den) is a unit and den is monic in
// graded-lex order, so equal values have identical representations and
// den == 1 exactly when the value is polynomial.
class RatFn {
 public:
  RatFn() = default;
  RatFn(Poly num);  // NOLINT: implicit wrap of a polynomial is intended
  RatFn(Poly num, Poly den);

  static RatFn zero(const VarContext& ctx) { return RatFn(Poly(ctx)); }
  static RatFn constant(const VarContext& ctx, const Rat& c) {
    return RatFn(Poly(ctx, c));
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const VarContext& context() const { return num_.context(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }

  RatFn operator-() const;
  RatFn operator+(const RatFn& o) const;
  RatFn operator-(const RatFn& o) const;
  RatFn operator*(const RatFn& o) const;
  RatFn operator/(const RatFn& o) const;
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }

  bool operator==(const RatFn& o) const;
  bool operator!=(const RatFn& o) const { return !(*this == o); }

  RatFn partial_derivative(int var) const;
  Rat evaluate(const std::vector<Rat>& point) const;  // throws on pole
  RatFn substitute(const std::vector<Poly>& args) const;
  RatFn lift(const VarContext& wider) const;

  std::string to_string() const;

 private:
  void normalize();
  Poly num_, den_;
};

}  // namespace algebroid
