#pragma once

#include <optional>
#include <vector>

#include "algebroid/ratfn.hpp"

namespace algebroid {

using RatMatrix = std::vector<std::vector<RatFn>>;

// Rank over the rational-function field (the generic rank of the matrix).
int generic_rank(RatMatrix m);

// Solves A x = b over the rational-function field. Returns a particular
// solution with free variables set to zero, or nullopt if inconsistent.
std::optional<std::vector<RatFn>> solve_linear(RatMatrix a, std::vector<RatFn> b);

// Exact rank of a constant matrix.
int rational_rank(std::vector<std::vector<Rat>> m);

// Reduced row echelon form solver over Q for dense systems A x = b.
// Returns the particular solution with free variables zeroed, or nullopt.
std::optional<std::vector<Rat>> solve_rational_system(
    std::vector<std::vector<Rat>> a, std::vector<Rat> b);

// Basis of the null space of a constant matrix (one vector per free column,
// in column order).
std::vector<std::vector<Rat>> rational_nullspace(std::vector<std::vector<Rat>> a,
                                                 int columns);

}  // namespace algebroid
