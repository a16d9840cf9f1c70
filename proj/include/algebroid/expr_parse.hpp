#pragma once

#include <string_view>

#include "algebroid/poly.hpp"

namespace algebroid {

// Parses the closed expression language
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := var | rational | '(' expr ')'
//   rational := uint ('/' uint)?
// over the variables of the given context. Whitespace is insignificant.
// line_offset is added to reported error positions.
Poly parse_poly(const VarContext& ctx, std::string_view text, int line_offset = 1);

}  // namespace algebroid
