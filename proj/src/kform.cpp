#include "algebroid/kform.hpp"

#include <sstream>

#include "algebroid/errors.hpp"

namespace algebroid {

KForm::KForm(VarContext ctx, int degree) : ctx_(std::move(ctx)), degree_(degree) {
  if (degree < 1 || degree > 3)
    throw precondition_error("form degree must be 1, 2 or 3");
}

KForm KForm::one_form(const VarContext& ctx, std::vector<RatFn> coefficients) {
  if (static_cast<int>(coefficients.size()) != ctx.size())
    throw precondition_error("1-form needs one coefficient per variable");
  KForm w(ctx, 1);
  for (int i = 0; i < ctx.size(); ++i) w.add_term({i}, coefficients[i]);
  return w;
}

KForm KForm::one_form_polys(const VarContext& ctx, std::vector<Poly> coefficients) {
  std::vector<RatFn> cs;
  cs.reserve(coefficients.size());
  for (auto& p : coefficients) cs.emplace_back(std::move(p));
  return one_form(ctx, std::move(cs));
}

KForm KForm::coordinate(const VarContext& ctx, int i) {
  KForm w(ctx, 1);
  w.add_term({i}, RatFn::constant(ctx, Rat(1)));
  return w;
}

RatFn KForm::coefficient(const std::vector<int>& tuple) const {
  auto it = coeffs_.find(tuple);
  return it == coeffs_.end() ? RatFn::zero(ctx_) : it->second;
}

void KForm::add_term(const std::vector<int>& tuple, const RatFn& c) {
  if (static_cast<int>(tuple.size()) != degree_)
    throw precondition_error("index tuple length must equal form degree");
  for (size_t i = 0; i < tuple.size(); ++i) {
    if (tuple[i] < 0 || tuple[i] >= ctx_.size())
      throw precondition_error("form index out of range");
    if (i > 0 && tuple[i - 1] >= tuple[i])
      throw precondition_error("form index tuple must be strictly increasing");
  }
  if (c.is_zero()) return;
  auto it = coeffs_.find(tuple);
  if (it == coeffs_.end()) {
    coeffs_.emplace(tuple, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) coeffs_.erase(it);
  }
}

std::vector<RatFn> KForm::coefficient_vector() const {
  if (degree_ != 1) throw precondition_error("coefficient vector requires degree 1");
  std::vector<RatFn> out(ctx_.size(), RatFn::zero(ctx_));
  for (const auto& [tuple, c] : coeffs_) out[tuple[0]] = c;
  return out;
}

KForm KForm::operator+(const KForm& o) const {
  require_same_context(ctx_, o.ctx_, "form add");
  if (degree_ != o.degree_) throw precondition_error("form degrees differ");
  KForm r(*this);
  for (const auto& [tuple, c] : o.coeffs_) r.add_term(tuple, c);
  return r;
}

KForm KForm::operator-(const KForm& o) const { return *this + (-o); }

KForm KForm::operator-() const {
  KForm r(ctx_, degree_);
  for (const auto& [tuple, c] : coeffs_) r.coeffs_.emplace(tuple, -c);
  return r;
}

KForm KForm::scaled(const RatFn& a) const {
  KForm r(ctx_, degree_);
  if (a.is_zero()) return r;
  for (const auto& [tuple, c] : coeffs_) {
    RatFn v = c * a;
    if (!v.is_zero()) r.coeffs_.emplace(tuple, std::move(v));
  }
  return r;
}

bool KForm::operator==(const KForm& o) const {
  return ctx_ == o.ctx_ && degree_ == o.degree_ && coeffs_ == o.coeffs_;
}

std::string KForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [tuple, c] : coeffs_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.to_string() << ")";
    for (int idx : tuple) os << " d" << ctx_.name(idx);
  }
  return os.str();
}

}  // namespace algebroid
