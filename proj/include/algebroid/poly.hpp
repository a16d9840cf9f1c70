#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "algebroid/context.hpp"
#include "algebroid/errors.hpp"

namespace algebroid {

// Exact rational scalar. GMP does the arbitrary-precision work; the library
// never touches floating point.
using Rat = mpq_class;

Rat rat_pow(const Rat& base, unsigned exp);
std::string rat_to_string(const Rat& r);

using Exponents = std::vector<unsigned>;

// true if a > b in graded lexicographic order with x1 > x2 > ... > xn.
bool graded_lex_greater(const Exponents& a, const Exponents& b);

struct Term {
  Exponents exp;
  Rat coeff;
};

// Sparse multivariate polynomial over the rationals. Terms are kept in
// strictly descending graded-lex order with no zero coefficients, so equal
// values have identical representations.
class Poly {
 public:
  Poly() = default;  // unusable until given a context
  explicit Poly(VarContext ctx);                 // zero
  Poly(VarContext ctx, const Rat& constant);
  Poly(VarContext ctx, long constant);

  static Poly variable(const VarContext& ctx, int index);
  static Poly monomial(const VarContext& ctx, Exponents exp, Rat coeff);
  // Sorts, merges duplicates, drops zeros.
  static Poly from_terms(VarContext ctx, std::vector<Term> terms);

  const VarContext& context() const { return ctx_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_one() const;
  Rat constant_term() const;
  // -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(int var) const;
  const Term& leading_term() const;  // precondition: nonzero

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rat& c) const;
  Poly pow(unsigned e) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly partial_derivative(int var) const;
  Rat evaluate(const std::vector<Rat>& point) const;
  // Substitute args[i] for variable i; all args share one context, which
  // becomes the context of the result.
  Poly substitute(const std::vector<Poly>& args) const;
  // Reinterpret in a context whose leading names match this one's.
  Poly lift(const VarContext& wider) const;

  std::string to_string() const;

 private:
  VarContext ctx_;
  std::vector<Term> terms_;
};

Poly operator*(const Rat& c, const Poly& p);

// Exact division; throws if b does not divide a.
Poly poly_divexact(const Poly& a, const Poly& b);
// Exact division without the throw.
std::optional<Poly> poly_try_divexact(const Poly& a, const Poly& b);

// gcd over Q[x1..xn] via content/primitive-part recursion. The result is
// primitive with integer coefficients and positive leading coefficient
// (1 for coprime inputs).
Poly poly_gcd(const Poly& a, const Poly& b);

// Scalar-normalized representative: integer coefficients with content 1 and
// positive leading coefficient.
Poly poly_primitive(const Poly& p);

}  // namespace algebroid
