#include "algebroid/linalg.hpp"

#include "algebroid/errors.hpp"

namespace algebroid {

int generic_rank(RatMatrix m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!m[r][c].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (int r = rank + 1; r < rows; ++r) {
      if (m[r][c].is_zero()) continue;
      RatFn factor = m[r][c] / m[rank][c];
      for (int k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::optional<std::vector<RatFn>> solve_linear(RatMatrix a, std::vector<RatFn> b) {
  const int rows = static_cast<int>(a.size());
  if (rows == 0) return std::vector<RatFn>{};
  const int cols = static_cast<int>(a[0].size());
  const VarContext ctx = b.empty() ? a[0][0].context() : b[0].context();
  std::vector<int> pivot_col;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (!a[r][c].is_zero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    std::swap(b[rank], b[pivot]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      RatFn factor = a[r][c] / a[rank][c];
      for (int k = c; k < cols; ++k) a[r][k] -= factor * a[rank][k];
      b[r] -= factor * b[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (int r = rank; r < rows; ++r)
    if (!b[r].is_zero()) return std::nullopt;
  std::vector<RatFn> x(cols, RatFn::zero(ctx));
  for (int r = 0; r < rank; ++r) x[pivot_col[r]] = b[r] / a[r][pivot_col[r]];
  return x;
}

namespace {

// Shared Gauss-Jordan over Q; returns pivot columns.
std::vector<int> rref(std::vector<std::vector<Rat>>& a, std::vector<Rat>* b) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  std::vector<int> pivots;
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    if (b) std::swap((*b)[rank], (*b)[pivot]);
    Rat inv = Rat(1) / a[rank][c];
    for (int k = c; k < cols; ++k) a[rank][k] *= inv;
    if (b) (*b)[rank] *= inv;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      Rat f = a[r][c];
      for (int k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
      if (b) (*b)[r] -= f * (*b)[rank];
    }
    pivots.push_back(c);
    ++rank;
  }
  return pivots;
}

}  // namespace

int rational_rank(std::vector<std::vector<Rat>> m) {
  return static_cast<int>(rref(m, nullptr).size());
}

std::optional<std::vector<Rat>> solve_rational_system(
    std::vector<std::vector<Rat>> a, std::vector<Rat> b) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  auto pivots = rref(a, &b);
  for (int r = static_cast<int>(pivots.size()); r < rows; ++r)
    if (b[r] != 0) return std::nullopt;
  std::vector<Rat> x(cols, Rat(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = b[r];
  return x;
}

std::vector<std::vector<Rat>> rational_nullspace(std::vector<std::vector<Rat>> a,
                                                 int columns) {
  auto pivots = rref(a, nullptr);
  std::vector<bool> is_pivot(columns, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<std::vector<Rat>> basis;
  for (int free = 0; free < columns; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> v(columns, Rat(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) {
      if (static_cast<int>(a[r].size()) > free) v[pivots[r]] = -a[r][free];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace algebroid
