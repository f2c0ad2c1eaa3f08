#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <vector>

#include "badpoints/poly.hpp"

namespace badpoints {

using Point = std::vector<std::int64_t>;

// Finite set of lattice points of a fixed arity, kept sorted.
struct ExponentSet {
  std::size_t arity = 0;
  std::set<Point> points;

  bool contains(const Point& p) const { return points.count(p) != 0; }
  std::size_t size() const { return points.size(); }
  friend bool operator==(const ExponentSet&, const ExponentSet&) = default;
};

ExponentSet support(const Poly& p);

// Exact test that `q` is a convex combination of `points`. Works through
// affinely independent subsets (Caratheodory), solving each candidate
// barycentric system by rational elimination.
bool in_convex_hull(std::span<const Point> points, const Point& q);

// All lattice points b with 2b in the Newton polytope of p.
ExponentSet newton_half_support(const Poly& p);

Point to_point(const Monomial& m);
Monomial to_monomial(const Point& p);

}  // namespace badpoints
