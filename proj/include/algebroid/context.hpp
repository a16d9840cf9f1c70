#pragma once

#include <memory>
#include <string>
#include <vector>

namespace algebroid {

// Ordered list of variable names shared by every symbolic object. Copies are
// cheap; equality is by name sequence, so independently built contexts with
// the same names are interchangeable.
class VarContext {
 public:
  VarContext() = default;
  explicit VarContext(std::vector<std::string> names);

  // x1, x2, ..., xn (or any other stem).
  static VarContext numbered(const std::string& stem, int n);

  int size() const;
  const std::string& name(int i) const;
  const std::vector<std::string>& names() const;
  int index_of(const std::string& name) const;  // -1 if absent
  VarContext prefix(int k) const;

  bool operator==(const VarContext& o) const;
  bool operator!=(const VarContext& o) const { return !(*this == o); }

 private:
  std::shared_ptr<const std::vector<std::string>> names_;
};

void require_same_context(const VarContext& a, const VarContext& b,
                          const char* where);

}  // namespace algebroid
