#include "algebroid/ratfn.hpp"

#include "algebroid/errors.hpp"

namespace algebroid {

RatFn::RatFn(Poly num) : num_(std::move(num)), den_(num_.context(), Rat(1)) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  require_same_context(num_.context(), den_.context(), "rational function");
  normalize();
}

void RatFn::normalize() {
  if (den_.is_zero()) throw precondition_error("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(num_.context(), Rat(1));
    return;
  }
  if (!den_.is_one()) {
    Poly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
  }
  Rat lead = den_.leading_term().coeff;
  if (lead != 1) {
    Rat inv = Rat(1) / lead;
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }
}

RatFn RatFn::operator-() const {
  RatFn r(*this);
  r.num_ = -r.num_;
  return r;
}

RatFn RatFn::operator+(const RatFn& o) const {
  if (den_ == o.den_) return RatFn(num_ + o.num_, den_);
  if (den_.is_one()) return RatFn(num_ * o.den_ + o.num_, o.den_);
  if (o.den_.is_one()) return RatFn(num_ + o.num_ * den_, den_);
  // Cancel the common denominator factor before cross-multiplying.
  Poly d = poly_gcd(den_, o.den_);
  if (d.is_constant()) return RatFn(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
  Poly left = poly_divexact(den_, d);
  Poly right = poly_divexact(o.den_, d);
  return RatFn(num_ * right + o.num_ * left, den_ * right);
}

RatFn RatFn::operator-(const RatFn& o) const { return *this + (-o); }

namespace {

// num/den with the cross gcds stripped first; both pairs assumed normalized.
RatFn reduced_product(const Poly& n1, const Poly& d1, const Poly& n2,
                      const Poly& d2) {
  Poly a = n1, b = d2, c = n2, d = d1;
  if (!a.is_zero() && !b.is_one()) {
    Poly g = poly_gcd(a, b);
    if (!g.is_constant()) {
      a = poly_divexact(a, g);
      b = poly_divexact(b, g);
    }
  }
  if (!c.is_zero() && !d.is_one()) {
    Poly g = poly_gcd(c, d);
    if (!g.is_constant()) {
      c = poly_divexact(c, g);
      d = poly_divexact(d, g);
    }
  }
  return RatFn(a * c, d * b);
}

}  // namespace

RatFn RatFn::operator*(const RatFn& o) const {
  return reduced_product(num_, den_, o.num_, o.den_);
}

RatFn RatFn::operator/(const RatFn& o) const {
  if (o.is_zero()) throw precondition_error("division by zero rational function");
  return reduced_product(num_, den_, o.den_, o.num_);
}

bool RatFn::operator==(const RatFn& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

RatFn RatFn::partial_derivative(int var) const {
  Poly dn = num_.partial_derivative(var);
  if (den_.is_one()) return RatFn(std::move(dn));
  Poly dd = den_.partial_derivative(var);
  return RatFn(dn * den_ - num_ * dd, den_ * den_);
}

Rat RatFn::evaluate(const std::vector<Rat>& point) const {
  Rat d = den_.evaluate(point);
  if (d == 0) throw precondition_error("evaluation at a pole");
  return num_.evaluate(point) / d;
}

RatFn RatFn::substitute(const std::vector<Poly>& args) const {
  Poly n = num_.substitute(args);
  Poly d = den_.substitute(args);
  if (d.is_zero())
    throw precondition_error("substitution maps denominator to zero");
  return RatFn(std::move(n), std::move(d));
}

RatFn RatFn::lift(const VarContext& wider) const {
  return RatFn(num_.lift(wider), den_.lift(wider));
}

std::string RatFn::to_string() const {
  if (den_.is_one()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace algebroid
