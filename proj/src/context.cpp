#include "algebroid/context.hpp"

#include <algorithm>
#include <set>

#include "algebroid/errors.hpp"

namespace algebroid {

VarContext::VarContext(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {
  if (names_->empty()) throw input_error("variable context must not be empty");
  std::set<std::string> seen;
  for (const auto& n : *names_) {
    if (n.empty()) throw input_error("empty variable name");
    if (!seen.insert(n).second) throw input_error("duplicate variable name: " + n);
  }
}

VarContext VarContext::numbered(const std::string& stem, int n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 1; i <= n; ++i) names.push_back(stem + std::to_string(i));
  return VarContext(std::move(names));
}

int VarContext::size() const {
  return names_ ? static_cast<int>(names_->size()) : 0;
}

const std::string& VarContext::name(int i) const { return (*names_)[i]; }

const std::vector<std::string>& VarContext::names() const { return *names_; }

int VarContext::index_of(const std::string& name) const {
  if (!names_) return -1;
  auto it = std::find(names_->begin(), names_->end(), name);
  return it == names_->end() ? -1 : static_cast<int>(it - names_->begin());
}

VarContext VarContext::prefix(int k) const {
  if (k <= 0 || k > size()) throw input_error("prefix size out of range");
  if (k == size()) return *this;
  return VarContext(std::vector<std::string>(names_->begin(), names_->begin() + k));
}

bool VarContext::operator==(const VarContext& o) const {
  if (names_ == o.names_) return true;
  if (!names_ || !o.names_) return false;
  return *names_ == *o.names_;
}

void require_same_context(const VarContext& a, const VarContext& b,
                          const char* where) {
  if (a != b)
    throw precondition_error(std::string(where) + ": operands use different variable contexts");
}

}  // namespace algebroid
