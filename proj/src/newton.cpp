#include "badpoints/newton.hpp"

#include <algorithm>
#include <functional>

#include "badpoints/error.hpp"
#include "badpoints/linalg.hpp"

namespace badpoints {

Point to_point(const Monomial& m) {
  Point p(m.arity());
  for (std::size_t i = 0; i < m.arity(); ++i) p[i] = m[i];
  return p;
}

Monomial to_monomial(const Point& p) {
  Monomial m(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0) throw DomainError("negative_exponent", "lattice point has a negative coordinate");
    m.set(i, static_cast<Monomial::Exponent>(p[i]));
  }
  return m;
}

ExponentSet support(const Poly& p) {
  ExponentSet s;
  s.arity = p.arity();
  for (const auto& t : p.terms()) s.points.insert(to_point(t.mono));
  return s;
}

namespace {

linalg::Matrix<Rat> affine_matrix(std::span<const Point> points, const std::vector<std::size_t>& chosen,
                                  std::size_t dim) {
  linalg::Matrix<Rat> a(dim + 1, std::vector<Rat>(chosen.size()));
  for (std::size_t j = 0; j < chosen.size(); ++j) {
    for (std::size_t i = 0; i < dim; ++i) a[i][j] = Rat(static_cast<long>(points[chosen[j]][i]));
    a[dim][j] = Rat(1);
  }
  return a;
}

}  // namespace

bool in_convex_hull(std::span<const Point> points, const Point& q) {
  if (points.empty()) return false;
  const std::size_t dim = q.size();
  std::vector<Rat> rhs(dim + 1);
  for (std::size_t i = 0; i < dim; ++i) rhs[i] = Rat(static_cast<long>(q[i]));
  rhs[dim] = Rat(1);
  const std::size_t max_size = std::min(points.size(), dim + 1);
  std::vector<std::size_t> chosen;
  // Subsets that are affinely dependent are pruned together with their
  // supersets; every hull point lies in the hull of an independent subset.
  std::function<bool(std::size_t)> search = [&](std::size_t start) -> bool {
    for (std::size_t i = start; i < points.size(); ++i) {
      chosen.push_back(i);
      const auto a = affine_matrix(points, chosen, dim);
      if (linalg::rank(a) == chosen.size()) {
        auto lambda = linalg::solve(a, rhs);
        if (lambda && std::all_of(lambda->begin(), lambda->end(), [](const Rat& r) { return sgn(r) >= 0; }))
          return true;
        if (chosen.size() < max_size && search(i + 1)) return true;
      }
      chosen.pop_back();
    }
    return false;
  };
  return search(0);
}

ExponentSet newton_half_support(const Poly& p) {
  if (p.is_zero()) throw DomainError("zero_polynomial", "Newton polytope of the zero polynomial");
  const ExponentSet supp = support(p);
  const std::vector<Point> pts(supp.points.begin(), supp.points.end());
  const std::size_t n = p.arity();
  Point lo(n, 0);
  Point hi(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    lo[i] = pts[0][i];
    hi[i] = pts[0][i];
    for (const auto& q : pts) {
      lo[i] = std::min(lo[i], q[i]);
      hi[i] = std::max(hi[i], q[i]);
    }
    lo[i] = (lo[i] + 1) / 2;  // ceil for nonnegative values
    hi[i] = hi[i] / 2;
  }
  ExponentSet out;
  out.arity = n;
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return out;
  Point beta = lo;
  for (;;) {
    Point doubled(n);
    for (std::size_t i = 0; i < n; ++i) doubled[i] = 2 * beta[i];
    if (in_convex_hull(pts, doubled)) out.points.insert(beta);
    std::size_t i = 0;
    while (i < n && beta[i] == hi[i]) {
      beta[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++beta[i];
  }
  return out;
}

}  // namespace badpoints
