#include "algebroid/vec_field.hpp"

#include <sstream>

#include "algebroid/errors.hpp"

namespace algebroid {

VecField::VecField(VarContext ctx, std::vector<RatFn> components)
    : ctx_(std::move(ctx)), comps_(std::move(components)) {
  if (static_cast<int>(comps_.size()) != ctx_.size())
    throw precondition_error("vector field component count must equal dimension");
  for (const auto& c : comps_) require_same_context(ctx_, c.context(), "vector field");
}

VecField VecField::zero(const VarContext& ctx) {
  return VecField(ctx, std::vector<RatFn>(ctx.size(), RatFn::zero(ctx)));
}

VecField VecField::from_polys(const VarContext& ctx, std::vector<Poly> components) {
  std::vector<RatFn> comps;
  comps.reserve(components.size());
  for (auto& p : components) comps.emplace_back(std::move(p));
  return VecField(ctx, std::move(comps));
}

VecField VecField::coordinate(const VarContext& ctx, int i) {
  VecField v = zero(ctx);
  v.comps_[i] = RatFn::constant(ctx, Rat(1));
  return v;
}

bool VecField::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

VecField VecField::operator+(const VecField& o) const {
  require_same_context(ctx_, o.ctx_, "vector field add");
  std::vector<RatFn> out;
  out.reserve(comps_.size());
  for (size_t i = 0; i < comps_.size(); ++i) out.push_back(comps_[i] + o.comps_[i]);
  return VecField(ctx_, std::move(out));
}

VecField VecField::operator-(const VecField& o) const { return *this + (-o); }

VecField VecField::operator-() const {
  std::vector<RatFn> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(-c);
  return VecField(ctx_, std::move(out));
}

VecField VecField::scaled(const RatFn& a) const {
  std::vector<RatFn> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(c * a);
  return VecField(ctx_, std::move(out));
}

bool VecField::operator==(const VecField& o) const {
  return ctx_ == o.ctx_ && comps_ == o.comps_;
}

std::string VecField::to_string() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < comps_.size(); ++i) {
    if (i) os << ", ";
    os << comps_[i].to_string();
  }
  os << ")";
  return os.str();
}

}  // namespace algebroid
