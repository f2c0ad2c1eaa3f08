#include "badpoints/certificates.hpp"

#include <algorithm>
#include <numeric>

#include "badpoints/error.hpp"
#include "badpoints/linalg.hpp"

namespace badpoints {

std::optional<std::string> StructNonneg::violation() const {
  if (sgn(scalar) < 0) return "negative scalar " + to_string(scalar);
  for (const auto& a : atoms)
    if (sgn(a.c) <= 0) return "atom constant " + to_string(a.c) + " is not positive";
  return std::nullopt;
}

Poly StructNonneg::denote(const VarsPtr& vars) const {
  Poly out = Poly::constant(vars, scalar);
  for (const auto& s : squares) out = out * s * s;
  for (const auto& a : atoms) out = out * (a.g * a.g + Poly::constant(vars, a.c));
  return out;
}

Verdict verify_sos(const SosCert& cert) {
  const VarsPtr& vars = cert.target.vars_ptr();
  Poly sum(vars);
  for (std::size_t k = 0; k < cert.items.size(); ++k) {
    const auto& item = cert.items[k];
    if (auto v = item.scale.violation()) return {false, "item " + std::to_string(k) + ": " + *v, std::nullopt};
    cert.target.require_compatible(item.root, "sos item");
    const Poly scale = item.scale.denote(vars);
    if (cert.ring == SosRing::polynomial) {
      sum += scale * item.root * item.root;
    } else {
      sum += mul_truncated(scale, mul_truncated(item.root, item.root, cert.trunc), cert.trunc);
    }
  }
  Poly residual = cert.target - sum;
  if (cert.ring == SosRing::truncated) residual = residual.truncated(cert.trunc);
  if (residual.is_zero()) return {true, "", std::nullopt};
  std::string where = cert.ring == SosRing::polynomial ? "identity fails" : "identity fails through degree " + std::to_string(cert.trunc);
  return {false, where, residual};
}

Verdict verify_amgm(const AmGmCert& cert) {
  const std::size_t n = cert.terms.size();
  if (n < 2) return {false, "need at least two terms", std::nullopt};
  for (std::size_t k = 0; k < n; ++k)
    if (auto v = cert.terms[k].violation()) return {false, "term " + std::to_string(k) + ": " + *v, std::nullopt};
  if (auto v = cert.mean.violation()) return {false, "mean: " + *v, std::nullopt};
  const VarsPtr& vars = cert.target.vars_ptr();
  const Poly mean = cert.mean.denote(vars);
  Poly prod = Poly::constant(vars, Rat(1));
  Poly sum(vars);
  for (const auto& t : cert.terms) {
    const Poly d = t.denote(vars);
    prod = prod * d;
    sum += d;
  }
  if (mean.pow(static_cast<unsigned>(n)) != prod)
    return {false, "mean^" + std::to_string(n) + " differs from the product of the terms", mean.pow(static_cast<unsigned>(n)) - prod};
  const Poly residual = cert.target - (sum - mean * Rat(static_cast<long>(n)));
  if (!residual.is_zero()) return {false, "target differs from sum(terms) - n*mean", residual};
  return {true, "", std::nullopt};
}

namespace {

std::vector<std::pair<Point, Point>> pairs_summing_to(const ExponentSet& s, const Point& target) {
  std::vector<std::pair<Point, Point>> out;
  for (const auto& b1 : s.points) {
    Point b2(b1.size());
    for (std::size_t i = 0; i < b1.size(); ++i) b2[i] = target[i] - b1[i];
    if (b1 <= b2 && s.contains(b2)) out.emplace_back(b1, b2);
  }
  return out;
}

Point doubled(const Point& b) {
  Point out(b);
  for (auto& e : out) e *= 2;
  return out;
}

}  // namespace

std::optional<NonSosObstruction> find_non_sos_obstruction(const Poly& p) {
  if (p.is_zero()) throw DomainError("zero_polynomial", "non-SOS search on the zero polynomial");
  const ExponentSet half = newton_half_support(p);
  for (const auto& beta : half.points) {
    const Monomial corner = to_monomial(doubled(beta));
    const Rat c = p.coeff(corner);
    if (sgn(c) >= 0) continue;
    auto audit = pairs_summing_to(half, doubled(beta));
    if (audit.size() == 1 && audit[0].first == beta) return NonSosObstruction{p, half, beta, corner, c, audit};
  }
  return std::nullopt;
}

Verdict verify_non_sos(const NonSosObstruction& obs) {
  const ExponentSet half = newton_half_support(obs.poly);
  if (half != obs.support) return {false, "stored half support differs from the recomputed one", std::nullopt};
  if (!half.contains(obs.beta)) return {false, "beta is not in the half support", std::nullopt};
  if (obs.corner != to_monomial(doubled(obs.beta))) return {false, "corner is not 2*beta", std::nullopt};
  const Rat c = obs.poly.coeff(obs.corner);
  if (c != obs.coefficient) return {false, "stored coefficient differs from " + to_string(c), std::nullopt};
  if (sgn(c) >= 0) return {false, "corner coefficient is not negative", std::nullopt};
  const auto audit = pairs_summing_to(half, doubled(obs.beta));
  if (audit != obs.pair_audit) return {false, "pair audit differs from the recomputed one", std::nullopt};
  if (audit.size() != 1) return {false, "2*beta is reached by a pair of distinct support points", std::nullopt};
  return {true, "", std::nullopt};
}

namespace {

std::vector<ProductSupport> product_supports(const std::vector<TruncSeries>& gens, std::uint64_t degree) {
  std::vector<ProductSupport> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].trunc() < degree)
      throw DomainError("truncation_too_small", "generator " + std::to_string(i) + " is known only through degree " +
                                                    std::to_string(gens[i].trunc()));
    for (std::size_t j = i; j < gens.size(); ++j) {
      const Poly prod = mul_truncated(gens[i].body(), gens[j].body(), degree);
      ProductSupport ps{i, j, {}};
      for (const auto& t : prod.terms()) ps.support.push_back(t.mono);
      out.push_back(std::move(ps));
    }
  }
  return out;
}

bool same_supports(const std::vector<ProductSupport>& a, const std::vector<ProductSupport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k].i != b[k].i || a[k].j != b[k].j) return false;
    auto sa = a[k].support;
    auto sb = b[k].support;
    auto less = [](const Monomial& x, const Monomial& y) { return x.exponents() < y.exponents(); };
    std::sort(sa.begin(), sa.end(), less);
    std::sort(sb.begin(), sb.end(), less);
    if (sa != sb) return false;
  }
  return true;
}

}  // namespace

ConeObstruction make_cone_obstruction(const std::vector<TruncSeries>& gens, const Monomial& target) {
  return ConeObstruction{product_supports(gens, target.degree()), target};
}

ConeReport verify_cone_obstruction(const ConeObstruction& cert, const std::vector<TruncSeries>& gens,
                                   const TruncSeries& f) {
  ConeReport report;
  report.products = product_supports(gens, cert.target.degree());
  report.stored_supports_match = same_supports(report.products, cert.products);
  report.target_coefficient = f.coeff(cert.target);
  if (sgn(report.target_coefficient) == 0) {
    report.verdict = {false, "target coefficient of f is zero", std::nullopt};
    return report;
  }
  for (const auto& ps : report.products)
    for (const auto& m : ps.support)
      if (m.divides(cert.target)) {
        report.verdict = {false, "target lies in the cone of a monomial of product (" + std::to_string(ps.i) + ", " +
                                     std::to_string(ps.j) + ")",
                          std::nullopt};
        return report;
      }
  report.verdict = {true, "", std::nullopt};
  return report;
}

SampleResult sample_nonnegativity(const Poly& p, const GridBox& box) {
  if (box.bounds.size() != p.arity()) throw ArityMismatch(box.bounds.size(), p.arity(), "sample box");
  if (sgn(box.step) <= 0) throw DomainError("empty_box", "grid step must be positive");
  std::vector<std::vector<Rat>> axes;
  for (const auto& [lo, hi] : box.bounds) {
    if (lo > hi) throw DomainError("empty_box", "lower bound " + to_string(lo) + " exceeds upper bound " + to_string(hi));
    std::vector<Rat> values;
    for (Rat v = lo; v <= hi; v += box.step) values.push_back(v);
    std::stable_sort(values.begin(), values.end(), [](const Rat& a, const Rat& b) {
      const Rat aa = abs(a), ab = abs(b);
      if (aa != ab) return aa < ab;
      return a > b;
    });
    axes.push_back(std::move(values));
  }
  SampleResult out;
  const std::size_t n = axes.size();
  std::vector<std::size_t> idx(n, 0);
  std::vector<Rat> point(n);
  for (;;) {
    for (std::size_t i = 0; i < n; ++i) point[i] = axes[i][idx[i]];
    const Rat v = evaluate_rational(p, point);
    ++out.evaluated;
    if (sgn(v) < 0) {
      out.counterexample = true;
      out.point = point;
      out.value = v;
      return out;
    }
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < axes[i].size()) break;
      idx[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

Poly minimal_polynomial(const GaussRat& a, const VarsPtr& t) {
  const Poly x = Poly::variable(t, std::size_t{0});
  if (a.is_real()) return x - Poly::constant(t, a.re);
  return x * x - x * Rat(2 * a.re) + Poly::constant(t, a.norm());
}

namespace {

using Mat = std::vector<std::vector<Rat>>;

std::vector<GaussRat> mat_apply(const Mat& a, const std::vector<GaussRat>& x) {
  std::vector<GaussRat> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j)
      if (sgn(a[i][j]) != 0) out[i] += GaussRat(a[i][j]) * x[j];
  return out;
}

Mat inverse(const Mat& a) {
  const std::size_t n = a.size();
  linalg::Matrix<Rat> aug(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
    aug[i][n + i] = 1;
  }
  const auto pivots = linalg::row_reduce(aug);
  if (pivots.size() != n || pivots.back() >= n) throw DomainError("singular", "singular linear change");
  Mat out(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  return out;
}

GaussRat eval_univariate(const Poly& p, const GaussRat& t) { return evaluate(p, std::span<const GaussRat>(&t, 1)); }

// x -> A^-1 pi(A x) on points, and its inverse on the isomorphism locus.
std::vector<GaussRat> step_forward(const AvoidStep& s, const std::vector<GaussRat>& x) {
  std::vector<GaussRat> y = mat_apply(s.matrix, x);
  y.back() = eval_univariate(s.p, y[0]) * y.back();
  return mat_apply(inverse(s.matrix), y);
}

std::vector<GaussRat> step_preimage(const AvoidStep& s, const std::vector<GaussRat>& x) {
  std::vector<GaussRat> y = mat_apply(s.matrix, x);
  const GaussRat pv = eval_univariate(s.p, y[0]);
  if (pv.is_zero()) throw DomainError("not_invertible", "point lies outside the isomorphism locus");
  y.back() = y.back() / pv;
  return mat_apply(inverse(s.matrix), y);
}

std::vector<Poly> step_map(const AvoidStep& s, const VarsPtr& vars) {
  const std::size_t n = vars->size();
  std::vector<Poly> y(n, Poly(vars));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(s.matrix[i][j]) != 0) y[i] += Poly::variable(vars, j) * s.matrix[i][j];
  const Poly p_of_y0 = substitute(s.p, std::span<const Poly>(&y[0], 1));
  y.back() = p_of_y0 * y.back();
  const Mat inv = inverse(s.matrix);
  std::vector<Poly> out(n, Poly(vars));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(inv[i][j]) != 0) out[i] += y[j] * inv[i][j];
  return out;
}

// Deterministic search: permutations in lexicographic order, then first-row
// shears with coefficients 0, 1, -1, 2, -2.
std::optional<AvoidStep> find_step(const std::vector<GaussRat>& a, const std::vector<std::vector<GaussRat>>& others,
                                   const VarsPtr& t) {
  const std::size_t n = a.size();
  const long shear[] = {0, 1, -1, 2, -2};
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<std::size_t> c(n - 1, 0);
    for (;;) {
      Mat m(n, std::vector<Rat>(n));
      for (std::size_t i = 0; i < n; ++i) m[i][perm[i]] = 1;
      for (std::size_t j = 1; j < n; ++j) m[0][perm[j]] += shear[c[j - 1]];
      const auto ya = mat_apply(m, a);
      if (!ya.back().is_zero()) {
        const Poly p = minimal_polynomial(ya[0], t);
        bool good = true;
        for (const auto& o : others)
          if (eval_univariate(p, mat_apply(m, o)[0]).is_zero()) {
            good = false;
            break;
          }
        if (good) return AvoidStep{m, p, ya};
      }
      std::size_t k = 0;
      while (k < c.size() && ++c[k] == 5) c[k++] = 0;
      if (k == c.size()) break;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::nullopt;
}

}  // namespace

BirationalAvoid birational_avoid(VarsPtr vars, const std::vector<std::vector<GaussRat>>& avoid,
                                 const std::vector<std::vector<GaussRat>>& keep) {
  const std::size_t n = vars->size();
  if (n < 2) throw DomainError("bad_arity", "birational_avoid needs at least two variables");
  std::vector<std::vector<GaussRat>> all(avoid);
  all.insert(all.end(), keep.begin(), keep.end());
  for (const auto& p : all)
    if (p.size() != n) throw ArityMismatch(p.size(), n, "birational_avoid point");
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i] == all[j]) throw DomainError("coincident_points", "points " + std::to_string(i) + " and " + std::to_string(j) + " coincide");

  const VarsPtr t = make_vars({"t"});
  BirationalAvoid out{vars, {}, {}, {}};
  std::vector<std::vector<GaussRat>> pending(avoid);
  std::vector<std::vector<GaussRat>> kept(keep);
  for (std::size_t k = 0; k < pending.size(); ++k) {
    std::vector<std::vector<GaussRat>> others(kept);
    others.insert(others.end(), pending.begin() + static_cast<std::ptrdiff_t>(k) + 1, pending.end());
    auto step = find_step(pending[k], others, t);
    if (!step) throw DomainError("no_linear_change", "no small integer linear change separates the avoided point");
    for (auto& p : kept) p = step_preimage(*step, p);
    for (std::size_t j = k + 1; j < pending.size(); ++j) pending[j] = step_preimage(*step, pending[j]);
    out.steps.push_back(std::move(*step));
  }
  std::vector<Poly> map;
  for (std::size_t i = 0; i < n; ++i) map.push_back(Poly::variable(vars, i));
  // Composite steps[0] o steps[1] o ...: substitute inner maps into outer.
  for (const auto& s : out.steps) {
    const std::vector<Poly> inner = step_map(s, vars);
    for (auto& m : map) m = substitute(m, inner);
  }
  out.map = std::move(map);
  out.keep_preimages = std::move(kept);
  return out;
}

Verdict verify_birational_avoid(const BirationalAvoid& m, const std::vector<std::vector<GaussRat>>& avoid,
                                const std::vector<std::vector<GaussRat>>& keep) {
  if (m.steps.size() != avoid.size()) return {false, "one step per avoided point expected", std::nullopt};
  if (m.keep_preimages.size() != keep.size()) return {false, "missing kept-point preimages", std::nullopt};
  // Avoided point k, pulled back through the earlier steps, must be the
  // point avoided by step k.
  for (std::size_t k = 0; k < avoid.size(); ++k) {
    std::vector<GaussRat> p = avoid[k];
    for (std::size_t j = 0; j < k; ++j) p = step_preimage(m.steps[j], p);
    const AvoidStep& s = m.steps[k];
    const auto y = mat_apply(s.matrix, p);
    if (y != s.avoided) return {false, "step " + std::to_string(k) + " does not avoid the pulled-back point", std::nullopt};
    if (!eval_univariate(s.p, y[0]).is_zero()) return {false, "P does not vanish at the avoided first coordinate", std::nullopt};
    if (y.back().is_zero()) return {false, "avoided point has zero last coordinate", std::nullopt};
  }
  for (std::size_t k = 0; k < keep.size(); ++k) {
    std::vector<GaussRat> p = m.keep_preimages[k];
    for (std::size_t j = m.steps.size(); j-- > 0;) {
      const AvoidStep& s = m.steps[j];
      if (eval_univariate(s.p, mat_apply(s.matrix, p)[0]).is_zero())
        return {false, "kept point " + std::to_string(k) + " leaves the isomorphism locus", std::nullopt};
      p = step_forward(s, p);
    }
    if (p != keep[k]) return {false, "kept point " + std::to_string(k) + " is not hit by its preimage", std::nullopt};
    std::vector<GaussRat> image;
    for (const auto& c : m.map) image.push_back(evaluate(c, m.keep_preimages[k]));
    if (image != keep[k]) return {false, "composite map disagrees with the step maps", std::nullopt};
  }
  return {true, "", std::nullopt};
}

namespace {

bool is_origin(const std::vector<GaussRat>& p) {
  return std::all_of(p.begin(), p.end(), [](const GaussRat& z) { return z.is_zero(); });
}

std::string point_text(const std::vector<GaussRat>& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace

BadPointReport verify_bad_point(const BadPointCert& cert, const GroebnerOptions& options) {
  BadPointReport report;
  const Ideal ideal(cert.vars, cert.ideal);
  auto add = [&](std::string name, bool passed, std::string detail) {
    report.checks.push_back({std::move(name), passed, std::move(detail)});
  };
  if (cert.point.size() != cert.vars->size()) throw ArityMismatch(cert.point.size(), cert.vars->size(), "bad point");

  const Ideal gb = groebner(ideal, MonOrder::grevlex(), options);
  const MembershipWitness w = normal_form(cert.f, gb);
  add("membership", w.is_member(), w.is_member() ? "f reduces to 0 modulo the ideal" : "remainder " + format(w.remainder));

  bool on_variety = true;
  for (const auto& g : cert.ideal) on_variety = on_variety && evaluate(g, cert.point).is_zero();
  add("point-on-variety", on_variety, point_text(cert.point));

  switch (cert.method) {
    case NonMembershipMethod::localized: {
      const LocalMembership lm = member_localized(cert.f, ideal_power(ideal, 2), cert.point, options);
      add("localized-nonmembership", !lm.member,
          lm.member ? "quotient element " + format(*lm.witness) + " is a unit at the point"
                    : std::to_string(lm.quotient.basis().basis.size()) + " quotient generators all vanish at the point");
      break;
    }
    case NonMembershipMethod::order_bound: {
      if (!is_origin(cert.point)) {
        add("order-bound", false, "the order bound applies at the origin only");
        break;
      }
      const auto ob = local_order_bound(cert.f, ideal);
      add("order-bound", ob.has_value(),
          ob ? "ord(f) = " + std::to_string(ob->order) + " < " + std::to_string(ob->bound) : "ord(f) reaches 2 * min ord(g)");
      break;
    }
    case NonMembershipMethod::cone: {
      if (!is_origin(cert.point) || cert.vars->size() != 3) {
        add("cone-obstruction", false, "the hat-coordinate cone check needs three variables and the origin");
        break;
      }
      const HatCoordinates hc = hat_coordinates(cert.trunc);
      std::vector<TruncSeries> gens;
      for (const auto& g : cert.ideal) gens.push_back(hat_change(g, hc));
      const TruncSeries fh = hat_change(cert.f, hc);
      const ConeObstruction cone = make_cone_obstruction(gens, cert.cone_target);
      const ConeReport cr = verify_cone_obstruction(cone, gens, fh);
      add("cone-obstruction", cr.verdict.ok,
          cr.verdict.ok ? "coefficient " + to_string(cr.target_coefficient) + " of " +
                              format_monomial(cert.cone_target, *hc.hat_vars) + ", outside every product cone"
                        : cr.verdict.reason);
      break;
    }
  }

  std::size_t dim = 0;
  bool dim_known = true;
  try {
    dim = dimension(gb);
  } catch (const Error&) {
    dim_known = false;
  }
  if (cert.density.empty()) add("density", false, "no real-density witness");
  for (std::size_t k = 0; k < cert.density.size(); ++k) {
    const auto& d = cert.density[k];
    const std::string name = "density-witness-" + std::to_string(k);
    const bool real = std::all_of(d.point.begin(), d.point.end(), [](const GaussRat& z) { return z.is_real(); });
    if (!real) {
      add(name, false, "witness " + point_text(d.point) + " is not real");
      continue;
    }
    try {
      const std::size_t rank = jacobian_rank_at(cert.ideal, d.point);
      const bool smooth = dim_known && rank == d.expected_rank && rank + dim == cert.vars->size();
      add(name, smooth, point_text(d.point) + " Jacobian rank " + std::to_string(rank) + ", codimension " +
                            (dim_known ? std::to_string(cert.vars->size() - dim) : std::string("unknown")));
    } catch (const DomainError& e) {
      add(name, false, e.what());
    }
  }

  report.all_passed = std::all_of(report.checks.begin(), report.checks.end(), [](const HypothesisCheck& c) { return c.passed; });
  report.conclusion = report.all_passed
                          ? "f lies in I but not in I^2 at " + point_text(cert.point) +
                                "; with real points dense on V(I) (witnessed, not proven), f is not a sum of squares "
                                "in the local ring there"
                          : "hypotheses not verified; no conclusion";
  return report;
}

}  // namespace badpoints
