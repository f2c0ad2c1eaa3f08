#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "badpoints/rational.hpp"

namespace badpoints::linalg {

template <typename Field>
using Matrix = std::vector<std::vector<Field>>;

inline bool is_zero(const Rat& r) { return sgn(r) == 0; }
inline bool is_zero(const GaussRat& z) { return z.is_zero(); }

// In-place reduced row echelon form; returns the pivot columns.
template <typename Field>
std::vector<std::size_t> row_reduce(Matrix<Field>& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size();
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && is_zero(m[p][c])) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    const Field inv = Field(1) / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] = m[r][k] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || is_zero(m[i][c])) continue;
      const Field factor = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] = m[i][k] - factor * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <typename Field>
std::size_t rank(Matrix<Field> m) {
  return row_reduce(m).size();
}

// Solves A x = b; nullopt when inconsistent. Free variables are set to zero.
template <typename Field>
std::optional<std::vector<Field>> solve(const Matrix<Field>& a, const std::vector<Field>& b) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows == 0 ? 0 : a[0].size();
  Matrix<Field> aug(rows, std::vector<Field>(cols + 1));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
    aug[i][cols] = b[i];
  }
  auto pivots = row_reduce(aug);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  std::vector<Field> x(cols, Field(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug[r][cols];
  return x;
}

}  // namespace badpoints::linalg
