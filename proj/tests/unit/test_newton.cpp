#include "doctest.h"

#include <random>

#include "badpoints/error.hpp"
#include "badpoints/newton.hpp"

using namespace badpoints;

namespace {

// Phase-one simplex with Bland's rule: is there lambda >= 0 with
// A lambda = b? Independent of the Caratheodory search in the library.
bool feasible(const std::vector<std::vector<Rat>>& a, std::vector<Rat> b) {
  const std::size_t m = a.size();
  const std::size_t n = a[0].size();
  // Tableau over columns [x (n) | artificial (m) | rhs].
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(n + m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    const bool flip = sgn(b[i]) < 0;
    for (std::size_t j = 0; j < n; ++j) t[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = flip ? Rat(-b[i]) : b[i];
  }
  std::vector<std::size_t> basic(m);
  for (std::size_t i = 0; i < m; ++i) basic[i] = n + i;
  for (;;) {
    // Reduced costs for minimizing the sum of artificials.
    std::vector<Rat> cost(n + m, Rat(0));
    for (std::size_t j = n; j < n + m; ++j) cost[j] = 1;
    std::vector<Rat> reduced(n + m);
    for (std::size_t j = 0; j < n + m; ++j) {
      reduced[j] = cost[j];
      for (std::size_t i = 0; i < m; ++i) reduced[j] -= cost[basic[i]] * t[i][j];
    }
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j)
      if (sgn(reduced[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == n + m) break;
    std::size_t leave = m;
    Rat best;
    for (std::size_t i = 0; i < m; ++i) {
      if (sgn(t[i][enter]) <= 0) continue;
      Rat ratio = t[i][n + m] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basic[i] < basic[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) break;
    const Rat piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || sgn(t[i][enter]) == 0) continue;
      const Rat factor = t[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) t[i][j] -= factor * t[leave][j];
    }
    basic[leave] = enter;
  }
  for (std::size_t i = 0; i < m; ++i)
    if (basic[i] >= n && sgn(t[i][n + m]) != 0) return false;
  return true;
}

bool hull_oracle(const std::vector<Point>& pts, const Point& q) {
  const std::size_t d = q.size();
  std::vector<std::vector<Rat>> a(d + 1, std::vector<Rat>(pts.size()));
  std::vector<Rat> b(d + 1);
  for (std::size_t j = 0; j < pts.size(); ++j) {
    for (std::size_t i = 0; i < d; ++i) a[i][j] = Rat(static_cast<long>(pts[j][i]));
    a[d][j] = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = Rat(static_cast<long>(q[i]));
  b[d] = 1;
  return feasible(a, b);
}

ExponentSet brute_half_support(const Poly& p) {
  const ExponentSet s = support(p);
  std::vector<Point> pts(s.points.begin(), s.points.end());
  ExponentSet out;
  out.arity = p.arity();
  Point beta(p.arity(), 0);
  // Every candidate with 2*beta inside the bounding box [0, 6]^n.
  for (;;) {
    Point doubled(beta.size());
    for (std::size_t i = 0; i < beta.size(); ++i) doubled[i] = 2 * beta[i];
    if (hull_oracle(pts, doubled)) out.points.insert(beta);
    std::size_t i = 0;
    while (i < beta.size() && beta[i] == 3) beta[i++] = 0;
    if (i == beta.size()) break;
    ++beta[i];
  }
  return out;
}

std::set<Point> pts(std::initializer_list<Point> list) { return {list}; }

}  // namespace

TEST_CASE("half supports of the Motzkin polynomials") {
  auto xy = make_vars({"x", "y"});
  auto m = newton_half_support(parse_poly("x^4*y^2 + x^2*y^4 + 1 - 3*x^2*y^2", xy));
  CHECK(m.points == pts({{0, 0}, {1, 1}, {2, 1}, {1, 2}}));
  auto yz = make_vars({"y", "z"});
  auto g = newton_half_support(parse_poly("1 + 4*y^2*z^4 + 4*y^4*z^2 - y^2*z^2", yz));
  CHECK(g.points == pts({{0, 0}, {1, 1}, {1, 2}, {2, 1}}));
  auto x = newton_half_support(parse_poly("x^2", xy));
  CHECK(x.points == pts({{1, 0}}));
  CHECK_THROWS_AS(newton_half_support(Poly(xy)), Error);
  CHECK(newton_half_support(parse_poly("x", xy)).points.empty());
}

TEST_CASE("convex hull membership") {
  std::vector<Point> square{{0, 0}, {2, 0}, {0, 2}, {2, 2}};
  CHECK(in_convex_hull(square, {1, 1}));
  CHECK(in_convex_hull(square, {2, 1}));
  CHECK_FALSE(in_convex_hull(square, {3, 1}));
  std::vector<Point> segment{{0, 0, 0}, {2, 2, 2}};
  CHECK(in_convex_hull(segment, {1, 1, 1}));
  CHECK_FALSE(in_convex_hull(segment, {1, 1, 0}));
  CHECK_FALSE(in_convex_hull(std::vector<Point>{}, {0, 0}));
}

TEST_CASE("half support agrees with an exact simplex oracle") {
  std::mt19937 rng(17);
  for (std::size_t arity = 1; arity <= 3; ++arity) {
    VarList names{"x", "y", "z"};
    names.resize(arity);
    auto v = make_vars(names);
    std::uniform_int_distribution<unsigned> e(0, 6);
    std::uniform_int_distribution<int> nterms(1, 6);
    for (int k = 0; k < 60; ++k) {
      std::vector<Term> terms;
      const int n = nterms(rng);
      for (int t = 0; t < n; ++t) {
        Monomial mono(arity);
        for (std::size_t i = 0; i < arity; ++i) mono.set(i, e(rng));
        terms.push_back({mono, Rat(t % 3 == 0 ? -1 : 1)});
      }
      Poly p(v, terms);
      if (p.is_zero()) continue;
      CHECK(newton_half_support(p) == brute_half_support(p));
    }
  }
}
