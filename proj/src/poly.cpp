#include "algebroid/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "algebroid/errors.hpp"

namespace algebroid {

Rat rat_pow(const Rat& base, unsigned exp) {
  Rat r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  r.canonicalize();
  return r;
}

std::string rat_to_string(const Rat& r) { return r.get_str(); }

bool graded_lex_greater(const Exponents& a, const Exponents& b) {
  unsigned da = std::accumulate(a.begin(), a.end(), 0u);
  unsigned db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

namespace {

struct GradedLexDesc {
  bool operator()(const Exponents& a, const Exponents& b) const {
    return graded_lex_greater(a, b);
  }
};

unsigned total(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

}  // namespace

Poly::Poly(VarContext ctx) : ctx_(std::move(ctx)) {}

Poly::Poly(VarContext ctx, const Rat& constant) : ctx_(std::move(ctx)) {
  if (constant != 0) terms_.push_back({Exponents(ctx_.size(), 0), constant});
}

Poly::Poly(VarContext ctx, long constant) : Poly(std::move(ctx), Rat(constant)) {}

Poly Poly::variable(const VarContext& ctx, int index) {
  if (index < 0 || index >= ctx.size())
    throw precondition_error("variable index out of range");
  Exponents e(ctx.size(), 0);
  e[index] = 1;
  return monomial(ctx, std::move(e), Rat(1));
}

Poly Poly::monomial(const VarContext& ctx, Exponents exp, Rat coeff) {
  Poly p(ctx);
  if (static_cast<int>(exp.size()) != ctx.size())
    throw precondition_error("exponent vector length mismatch");
  if (coeff != 0) p.terms_.push_back({std::move(exp), std::move(coeff)});
  return p;
}

Poly Poly::from_terms(VarContext ctx, std::vector<Term> terms) {
  std::map<Exponents, Rat, GradedLexDesc> acc;
  for (auto& t : terms) {
    if (static_cast<int>(t.exp.size()) != ctx.size())
      throw precondition_error("exponent vector length mismatch");
    acc[t.exp] += t.coeff;
  }
  Poly p(std::move(ctx));
  for (auto& [e, c] : acc)
    if (c != 0) p.terms_.push_back({e, c});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total(terms_[0].exp) == 0);
}

bool Poly::is_one() const {
  return terms_.size() == 1 && total(terms_[0].exp) == 0 && terms_[0].coeff == 1;
}

Rat Poly::constant_term() const {
  if (!terms_.empty() && total(terms_.back().exp) == 0) return terms_.back().coeff;
  return Rat(0);
}

int Poly::total_degree() const {
  return terms_.empty() ? -1 : static_cast<int>(total(terms_.front().exp));
}

int Poly::degree_in(int var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exp[var]));
  return d;
}

const Term& Poly::leading_term() const {
  if (terms_.empty()) throw precondition_error("leading term of zero polynomial");
  return terms_.front();
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_context(ctx_, o.ctx_, "poly add");
  Poly r(ctx_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() && j < o.terms_.size()) {
    if (terms_[i].exp == o.terms_[j].exp) {
      Rat c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) r.terms_.push_back({terms_[i].exp, std::move(c)});
      ++i, ++j;
    } else if (graded_lex_greater(terms_[i].exp, o.terms_[j].exp)) {
      r.terms_.push_back(terms_[i++]);
    } else {
      r.terms_.push_back(o.terms_[j++]);
    }
  }
  while (i < terms_.size()) r.terms_.push_back(terms_[i++]);
  while (j < o.terms_.size()) r.terms_.push_back(o.terms_[j++]);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  require_same_context(ctx_, o.ctx_, "poly mul");
  std::map<Exponents, Rat, GradedLexDesc> acc;
  Exponents e(ctx_.size());
  for (const auto& a : terms_) {
    for (const auto& b : o.terms_) {
      for (int k = 0; k < ctx_.size(); ++k) e[k] = a.exp[k] + b.exp[k];
      acc[e] += a.coeff * b.coeff;
    }
  }
  Poly r(ctx_);
  for (auto& [exp, c] : acc)
    if (c != 0) r.terms_.push_back({exp, c});
  return r;
}

Poly Poly::scaled(const Rat& c) const {
  if (c == 0) return Poly(ctx_);
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff *= c;
  return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p.scaled(c); }

Poly Poly::pow(unsigned e) const {
  Poly r(ctx_, Rat(1));
  Poly base(*this);
  while (e > 0) {
    if (e & 1u) r *= base;
    e >>= 1u;
    if (e) base *= base;
  }
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (ctx_ != o.ctx_) return false;
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

Poly Poly::partial_derivative(int var) const {
  if (var < 0 || var >= ctx_.size())
    throw precondition_error("partial derivative: unknown variable");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exp[var] == 0) continue;
    Term d{t.exp, t.coeff * Rat(static_cast<long>(t.exp[var]))};
    d.exp[var] -= 1;
    out.push_back(std::move(d));
  }
  return from_terms(ctx_, std::move(out));
}

Rat Poly::evaluate(const std::vector<Rat>& point) const {
  if (static_cast<int>(point.size()) != ctx_.size())
    throw precondition_error("evaluation point length mismatch");
  Rat acc(0);
  for (const auto& t : terms_) {
    Rat m = t.coeff;
    for (int k = 0; k < ctx_.size(); ++k)
      if (t.exp[k]) m *= rat_pow(point[k], t.exp[k]);
    acc += m;
  }
  return acc;
}

Poly Poly::substitute(const std::vector<Poly>& args) const {
  if (static_cast<int>(args.size()) != ctx_.size())
    throw precondition_error("substitution arity mismatch");
  const VarContext& target = args.front().context();
  for (const auto& a : args) require_same_context(target, a.context(), "substitute");
  // Cache powers of each argument as needed.
  std::vector<std::vector<Poly>> powers(args.size());
  auto arg_pow = [&](int k, unsigned e) -> const Poly& {
    auto& cache = powers[k];
    if (cache.empty()) cache.push_back(Poly(target, Rat(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * args[k]);
    return cache[e];
  };
  Poly acc(target);
  for (const auto& t : terms_) {
    Poly m(target, t.coeff);
    for (int k = 0; k < ctx_.size(); ++k)
      if (t.exp[k]) m *= arg_pow(k, t.exp[k]);
    acc += m;
  }
  return acc;
}

Poly Poly::lift(const VarContext& wider) const {
  if (wider == ctx_) return *this;
  if (wider.size() < ctx_.size())
    throw precondition_error("lift: target context must not be narrower");
  for (int i = 0; i < ctx_.size(); ++i)
    if (wider.name(i) != ctx_.name(i))
      throw precondition_error("lift: target context is not an extension");
  Poly r(wider);
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Exponents e(wider.size(), 0);
    std::copy(t.exp.begin(), t.exp.end(), e.begin());
    out.push_back({std::move(e), t.coeff});
  }
  return from_terms(wider, std::move(out));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rat c = t.coeff;
    if (first) {
      if (c < 0) {
        os << "-";
        c = -c;
      }
    } else {
      os << (c < 0 ? " - " : " + ");
      if (c < 0) c = -c;
    }
    first = false;
    bool has_vars = total(t.exp) > 0;
    if (!has_vars || c != 1) {
      os << rat_to_string(c);
      if (has_vars) os << "*";
    }
    bool first_var = true;
    for (int k = 0; k < ctx_.size(); ++k) {
      if (t.exp[k] == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << ctx_.name(k);
      if (t.exp[k] > 1) os << "^" << t.exp[k];
    }
  }
  return os.str();
}

std::optional<Poly> poly_try_divexact(const Poly& a, const Poly& b) {
  require_same_context(a.context(), b.context(), "divexact");
  if (b.is_zero()) throw precondition_error("division by zero polynomial");
  if (a.is_zero()) return a;
  const int n = a.context().size();
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  for (int k = 0; k < n; ++k)
    if (a.degree_in(k) < b.degree_in(k)) return std::nullopt;
  // Ordered remainder so each reduction step touches |b| entries only.
  std::map<Exponents, Rat, GradedLexDesc> rem;
  for (const auto& t : a.terms()) rem.emplace(t.exp, t.coeff);
  const Term& lb = b.leading_term();
  std::vector<Term> quotient;
  Exponents q(n), e(n);
  while (!rem.empty()) {
    const auto& [lexp, lcoeff] = *rem.begin();
    for (int k = 0; k < n; ++k) {
      if (lexp[k] < lb.exp[k]) return std::nullopt;
      q[k] = lexp[k] - lb.exp[k];
    }
    Rat c = lcoeff / lb.coeff;
    for (const auto& t : b.terms()) {
      for (int k = 0; k < n; ++k) e[k] = q[k] + t.exp[k];
      auto it = rem.find(e);
      if (it == rem.end()) {
        rem.emplace(e, -(c * t.coeff));
      } else {
        it->second -= c * t.coeff;
        if (it->second == 0) rem.erase(it);
      }
    }
    quotient.push_back({q, std::move(c)});
  }
  return Poly::from_terms(a.context(), std::move(quotient));
}

Poly poly_divexact(const Poly& a, const Poly& b) {
  auto q = poly_try_divexact(a, b);
  if (!q) throw precondition_error("divexact: not divisible");
  return *q;
}

namespace {

// --- gcd machinery -------------------------------------------------------
//
// Polynomials are scaled to integer coefficients, then reduced with a
// primitive pseudo-remainder sequence in the lowest variable that actually
// occurs, recursing on the coefficients for contents.

// lcm of coefficient denominators.
mpz_class denominator_lcm(const Poly& p) {
  mpz_class l(1);
  for (const auto& t : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  return l;
}

// gcd of integer coefficients (polynomial assumed integer-scaled).
mpz_class integer_content(const Poly& p) {
  mpz_class g(0);
  for (const auto& t : p.terms()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
  return g;
}

Poly make_integer_primitive(const Poly& p) {
  if (p.is_zero()) return p;
  Poly q = p.scaled(Rat(denominator_lcm(p)));
  mpz_class c = integer_content(q);
  if (q.leading_term().coeff < 0) c = -c;
  return q.scaled(Rat(1) / Rat(c));
}

int first_variable(const Poly& p) {
  for (int k = 0; k < p.context().size(); ++k)
    if (p.degree_in(k) > 0) return k;
  return -1;
}

// View p as a univariate polynomial in variable v: coefficients by degree.
std::vector<Poly> univariate_view(const Poly& p, int v) {
  int d = p.degree_in(v);
  std::vector<Poly> coeffs(d + 1, Poly(p.context()));
  for (const auto& t : p.terms()) {
    Term moved = t;
    unsigned e = moved.exp[v];
    moved.exp[v] = 0;
    coeffs[e] += Poly::monomial(p.context(), moved.exp, moved.coeff);
  }
  return coeffs;
}

Poly gcd_rec(Poly a, Poly b);

Poly content_in(const Poly& p, int v) {
  Poly c(p.context());
  bool have = false;
  for (const auto& coeff : univariate_view(p, v)) {
    if (coeff.is_zero()) continue;
    c = have ? gcd_rec(c, coeff) : make_integer_primitive(coeff);
    have = true;
    if (c.is_one()) break;
  }
  return c;
}

// Pseudo-remainder of a by b with respect to variable v (deg_v a >= deg_v b).
Poly pseudo_remainder(Poly a, const Poly& b, int v) {
  auto bu = univariate_view(b, v);
  const int db = static_cast<int>(bu.size()) - 1;
  const Poly& lb = bu.back();
  Poly xv = Poly::variable(a.context(), v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    auto au = univariate_view(a, v);
    int da = static_cast<int>(au.size()) - 1;
    a = lb * a - au.back() * xv.pow(static_cast<unsigned>(da - db)) * b;
  }
  return a;
}

// Primitive part with respect to v: strip the polynomial content.
Poly primitive_part(const Poly& p, int v) {
  if (p.is_zero()) return p;
  Poly c = content_in(p, v);
  return make_integer_primitive(poly_divexact(p, c));
}

Poly gcd_rec(Poly a, Poly b) {
  if (a.is_zero()) return make_integer_primitive(b);
  if (b.is_zero()) return make_integer_primitive(a);
  a = make_integer_primitive(a);
  b = make_integer_primitive(b);
  int va = first_variable(a), vb = first_variable(b);
  if (va < 0 || vb < 0) return Poly(a.context(), Rat(1));  // a unit divides everything
  int v = std::min(va, vb);
  if (a.degree_in(v) == 0 || b.degree_in(v) == 0) {
    // v occurs in only one of them: gcd divides the content of the other.
    return gcd_rec(content_in(a, v), content_in(b, v));
  }
  Poly cont = gcd_rec(content_in(a, v), content_in(b, v));
  Poly pa = primitive_part(a, v), pb = primitive_part(b, v);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree_in(v) > 0) {
    Poly r = pseudo_remainder(pa, pb, v);
    pa = pb;
    pb = r.is_zero() ? r : primitive_part(r, v);
  }
  if (!pb.is_zero()) pa = Poly(a.context(), Rat(1));  // coprime primitive parts
  return make_integer_primitive(cont * pa);
}

// --- heuristic gcd --------------------------------------------------------
//
// Evaluate both polynomials at a large integer in one variable, take the gcd
// of the images recursively, and reconstruct a candidate from balanced
// base-xi digits. Trial division makes the answer exact; the pseudo-remainder
// sequence above stays as the fallback.

mpz_class max_abs_numerator(const Poly& p) {
  mpz_class m(0);
  for (const auto& t : p.terms()) {
    mpz_class a = abs(t.coeff.get_num());
    if (a > m) m = a;
  }
  return m;
}

// p with variable v set to the integer xi; powers of xi shared across terms.
Poly eval_var(const Poly& p, int v, const mpz_class& xi) {
  std::vector<mpz_class> powers{mpz_class(1)};
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    Term nt = t;
    if (nt.exp[v] > 0) {
      while (powers.size() <= nt.exp[v]) powers.push_back(powers.back() * xi);
      nt.coeff *= Rat(powers[nt.exp[v]]);
      nt.exp[v] = 0;
    }
    out.push_back(std::move(nt));
  }
  return Poly::from_terms(p.context(), std::move(out));
}

// Balanced remainder in (-xi/2, xi/2].
mpz_class balanced_mod(const mpz_class& a, const mpz_class& xi) {
  mpz_class r = a % xi;
  if (r < 0) r += xi;
  if (2 * r > xi) r -= xi;
  return r;
}

// Balanced base-xi digits of the image become the coefficients of
// v^0, v^1, ...
Poly reconstruct(const Poly& image, int v, const mpz_class& xi) {
  Poly g(image.context());
  Poly rest = image;
  Poly xv = Poly::variable(image.context(), v);
  for (unsigned e = 0; !rest.is_zero(); ++e) {
    if (e > 400) return Poly(image.context());
    std::vector<Term> digit, next;
    for (const auto& t : rest.terms()) {
      mpz_class d = balanced_mod(t.coeff.get_num(), xi);
      if (d != 0) digit.push_back({t.exp, Rat(d)});
      mpz_class carried = (t.coeff.get_num() - d) / xi;
      if (carried != 0) next.push_back({t.exp, Rat(carried)});
    }
    g += Poly::from_terms(image.context(), digit) * xv.pow(e);
    rest = Poly::from_terms(image.context(), next);
  }
  return g;
}

Poly strip_integer_content(const Poly& p, mpz_class& content_out) {
  content_out = integer_content(p);
  if (content_out == 0) content_out = 1;
  return p.scaled(Rat(1) / Rat(content_out));
}

// Inputs must have integer coefficients. The integer content is split off
// per level so that evaluation images keep the outer variables' structure
// in their content; trial division makes accepted answers exact.
std::optional<Poly> gcd_heuristic(const Poly& a0, const Poly& b0, int depth) {
  if (depth > 12) return std::nullopt;
  int va = first_variable(a0), vb = first_variable(b0);
  if (va < 0 && vb < 0) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a0.constant_term().get_num_mpz_t(),
            b0.constant_term().get_num_mpz_t());
    return Poly(a0.context(), Rat(g));
  }
  mpz_class ca, cb;
  Poly a = strip_integer_content(a0, ca);
  Poly b = strip_integer_content(b0, cb);
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());

  int v = va < 0 ? vb : (vb < 0 ? va : std::min(va, vb));
  mpz_class bound = std::max(max_abs_numerator(a), max_abs_numerator(b));
  mpz_class xi = 2 * bound + 29;
  for (int attempt = 0; attempt < 6; ++attempt) {
    // Evaluated integers stay manageable while degree * log2(xi) is small;
    // give up past ~200k bits and let the remainder sequence take over.
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) *
            static_cast<size_t>(std::max(a.degree_in(v), b.degree_in(v)) + 1) >
        200000)
      return std::nullopt;
    Poly ea = eval_var(a, v, xi);
    Poly eb = eval_var(b, v, xi);
    if (!ea.is_zero() && !eb.is_zero()) {
      if (auto image = gcd_heuristic(ea, eb, depth + 1)) {
        Poly g = reconstruct(*image, v, xi);
        if (!g.is_zero()) {
          mpz_class ignored;
          g = strip_integer_content(g, ignored);
          if (poly_try_divexact(a, g) && poly_try_divexact(b, g))
            return g.scaled(Rat(cg));
        }
      }
    }
    // Grow xi superlinearly between attempts.
    mpz_class sq;
    mpz_sqrt(sq.get_mpz_t(), xi.get_mpz_t());
    xi = xi * sq + 37;
  }
  return std::nullopt;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  require_same_context(a.context(), b.context(), "gcd");
  if (a.is_zero()) return make_integer_primitive(b);
  if (b.is_zero()) return make_integer_primitive(a);
  Poly pa = make_integer_primitive(a);
  Poly pb = make_integer_primitive(b);
  if (auto g = gcd_heuristic(pa, pb, 0)) return make_integer_primitive(*g);
  return gcd_rec(pa, pb);
}

Poly poly_primitive(const Poly& p) { return make_integer_primitive(p); }

}  // namespace algebroid
