#include "badpoints/series.hpp"

#include <algorithm>
#include <sstream>

#include "badpoints/error.hpp"
#include "badpoints/linalg.hpp"

namespace badpoints {

TruncSeries::TruncSeries(Poly body, std::uint64_t trunc) : body_(body.truncated(trunc)), trunc_(trunc) {}

TruncSeries TruncSeries::constant(VarsPtr vars, const Rat& c, std::uint64_t trunc) {
  return TruncSeries(Poly::constant(std::move(vars), c), trunc);
}

TruncSeries TruncSeries::variable(VarsPtr vars, std::size_t index, std::uint64_t trunc) {
  return TruncSeries(Poly::variable(std::move(vars), index), trunc);
}

Rat TruncSeries::coeff(const Monomial& m) const {
  if (m.degree() > trunc_)
    throw DomainError("truncation_too_small", "coefficient of degree " + std::to_string(m.degree()) +
                                                  " requested from a series known through degree " +
                                                  std::to_string(trunc_));
  return body_.coeff(m);
}

TruncSeries TruncSeries::truncated(std::uint64_t trunc) const {
  return TruncSeries(body_, std::min(trunc, trunc_));
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
  body_.require_compatible(o.body_, "series +");
  trunc_ = std::min(trunc_, o.trunc_);
  body_ = (body_ + o.body_).truncated(trunc_);
  return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) {
  body_.require_compatible(o.body_, "series -");
  trunc_ = std::min(trunc_, o.trunc_);
  body_ = (body_ - o.body_).truncated(trunc_);
  return *this;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  a.body_.require_compatible(b.body_, "series *");
  const std::uint64_t n = std::min(a.trunc_, b.trunc_);
  return TruncSeries(mul_truncated(a.body_, b.body_, n), n);
}

TruncSeries operator*(TruncSeries a, const Rat& c) {
  a.body_ *= c;
  return a;
}

TruncSeries operator-(const TruncSeries& a) { return TruncSeries(-a.body_, a.trunc_); }

bool operator==(const TruncSeries& a, const TruncSeries& b) {
  a.body_.require_compatible(b.body_, "series ==");
  const std::uint64_t n = std::min(a.trunc_, b.trunc_);
  return a.body_.truncated(n) == b.body_.truncated(n);
}

TruncSeries TruncSeries::pow(unsigned exponent) const {
  TruncSeries result = constant(vars_ptr(), Rat(1), trunc_);
  TruncSeries base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

TruncSeries series_arith(const TruncSeries& a, const TruncSeries& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add:
      return a + b;
    case ArithKind::sub:
      return a - b;
    case ArithKind::mul:
      return a * b;
  }
  throw DomainError("bad_kind", "unknown arithmetic kind");
}

SeriesOrder order(const TruncSeries& s) {
  if (s.body().is_zero()) return {false, s.trunc() + 1};
  return {true, s.body().low_degree()};
}

TruncSeries nth_root_unit(const TruncSeries& s, unsigned n) {
  if (n == 0) throw DomainError("bad_root", "root of index 0");
  if (s.constant_term() != 1) throw DomainError("not_unit", "nth_root_unit needs constant term 1");
  const std::uint64_t trunc = s.trunc();
  const TruncSeries one = TruncSeries::constant(s.vars_ptr(), Rat(1), trunc);
  const TruncSeries e = s - one;
  // Binomial coefficients binom(1/n, k), then Horner in e.
  std::vector<Rat> c{Rat(1)};
  const Rat exponent = make_rat(1, static_cast<long>(n));
  for (std::uint64_t k = 1; k <= trunc; ++k) c.push_back(c.back() * (exponent - Rat(static_cast<long>(k - 1))) / Rat(static_cast<long>(k)));
  TruncSeries r = one * c.back();
  for (std::uint64_t k = trunc; k-- > 0;) r = one * c[k] + e * r;
  return r;
}

TruncSeries compose(const Poly& p, std::span<const TruncSeries> images) {
  if (images.size() != p.arity()) throw ArityMismatch(images.size(), p.arity(), "compose");
  if (images.empty()) throw DomainError("bad_arity", "compose needs at least one image");
  std::uint64_t trunc = images[0].trunc();
  for (const auto& im : images) {
    images[0].body().require_compatible(im.body(), "compose images");
    trunc = std::min(trunc, im.trunc());
  }
  const VarsPtr& target = images[0].vars_ptr();
  std::vector<std::vector<TruncSeries>> powers(images.size());
  auto power = [&](std::size_t i, unsigned k) -> const TruncSeries& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(TruncSeries::constant(target, Rat(1), trunc));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i].truncated(trunc));
    return cache[k];
  };
  Poly acc(target);
  for (const auto& t : p.terms()) {
    TruncSeries term = TruncSeries::constant(target, t.coef, trunc);
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (t.mono[i] > 0) term = term * power(i, t.mono[i]);
    acc += term.body();
  }
  return TruncSeries(acc, trunc);
}

TruncSeries compose(const TruncSeries& s, std::span<const TruncSeries> images) {
  for (const auto& im : images)
    if (im.constant_term() != 0) throw DomainError("nonzero_constant", "series composition needs images in the maximal ideal");
  return compose(s.body(), images).truncated(s.trunc());
}

TruncSeries reversion(const TruncSeries& s) {
  if (s.arity() != 1) throw DomainError("bad_arity", "reversion is for one-variable series");
  if (s.constant_term() != 0) throw DomainError("bad_reversion", "reversion needs s(0) = 0");
  const Rat c = s.body().coeff(Monomial{1});
  if (sgn(c) == 0) throw DomainError("bad_reversion", "reversion needs s'(0) != 0");
  const TruncSeries y = TruncSeries::variable(s.vars_ptr(), 0, s.trunc());
  const Rat inv = 1 / c;
  // Fixed point r = r - (s(r) - y) / c; each pass fixes one more degree.
  TruncSeries r = y * inv;
  for (std::uint64_t k = 0; k <= s.trunc(); ++k) {
    const TruncSeries err = compose(s, std::span<const TruncSeries>(&r, 1)) - y;
    if (err.body().is_zero()) break;
    r -= err * inv;
  }
  return r;
}

TruncSeries divide_by_monomial(const TruncSeries& s, const Monomial& m) {
  if (m.degree() > s.trunc()) throw DomainError("truncation_too_small", "divisor degree exceeds the truncation order");
  std::vector<Term> terms;
  for (const auto& t : s.body().terms()) {
    if (!m.divides(t.mono)) throw DomainError("not_divisible", "monomial does not divide every term");
    terms.push_back({t.mono / m, t.coef});
  }
  return TruncSeries(Poly(s.vars_ptr(), std::move(terms)), s.trunc() - m.degree());
}

LayerSplit split_layer(const Poly& form, std::size_t r) {
  const VarsPtr& vars = form.vars_ptr();
  LayerSplit out{std::vector<Poly>(r, Poly(vars)), Poly(vars)};
  std::vector<std::vector<Term>> u(r);
  std::vector<Term> v;
  for (const auto& t : form.terms()) {
    std::size_t i = 0;
    while (i < r && t.mono[i] == 0) ++i;
    if (i == r) {
      v.push_back(t);
    } else {
      Monomial m = t.mono;
      m.set(i, m[i] - 1);
      u[i].push_back({m, t.coef});
    }
  }
  for (std::size_t i = 0; i < r; ++i) out.u[i] = Poly(vars, std::move(u[i]));
  out.v = Poly(vars, std::move(v));
  return out;
}

AdicResult adic_decompose(const TruncSeries& g, std::size_t r) {
  std::vector<Rat> ones(r, Rat(1));
  return adic_decompose(g, r, ones);
}

AdicResult adic_decompose(const TruncSeries& g, std::size_t r, std::span<const Rat> scales) {
  if (r > g.arity()) throw DomainError("bad_rank", "r = " + std::to_string(r) + " exceeds the arity");
  if (scales.size() != r) throw DomainError("bad_scales", "need one scale per square");
  for (const auto& s : scales)
    if (sgn(s) == 0) throw DomainError("bad_scales", "zero scale");
  if (!g.body().is_zero() && g.body().low_degree() < 3)
    throw DomainError("low_order", "adic_decompose needs g without terms of degree < 3");
  const std::uint64_t trunc = g.trunc();
  const VarsPtr& vars = g.vars_ptr();
  std::vector<Poly> a(r, Poly(vars));
  Poly b(vars);
  // c is the current defect: input minus the partial decomposition.
  Poly c = g.body();
  for (std::uint64_t d = 3; d <= trunc; ++d) {
    const Poly layer = c.homogeneous_part(d);
    if (layer.is_zero()) continue;
    LayerSplit split = split_layer(layer, r);
    Poly change = split.v;
    for (std::size_t i = 0; i < r; ++i) {
      const Poly& u = split.u[i];
      if (u.is_zero()) continue;
      const Poly xi = Poly::variable(vars, i);
      change += xi * u;
      change += mul_truncated(a[i], u, trunc);
      change += mul_truncated(u, u, trunc) * Rat(1 / (4 * scales[i]));
      a[i] += u * Rat(1 / (2 * scales[i]));
    }
    b += split.v;
    c = (c - change).truncated(trunc);
  }
  AdicResult out{{}, TruncSeries(b, trunc), trunc};
  for (auto& ai : a) out.a.emplace_back(std::move(ai), trunc);
  return out;
}

namespace {

VarsPtr internal_vars(std::size_t n) {
  VarList names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("_y" + std::to_string(i));
  return make_vars(std::move(names));
}

Poly linear_form(const VarsPtr& vars, const std::vector<Rat>& coeffs) {
  Poly out(vars);
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    if (sgn(coeffs[j]) != 0) out += Poly::variable(vars, j) * coeffs[j];
  return out;
}

}  // namespace

std::variant<SquareCompletion, NotApplicable> complete_squares(const TruncSeries& f) {
  const SeriesOrder ord = order(f);
  if (!ord.exact || ord.value != 2) throw DomainError("bad_order", "complete_squares needs a series of order 2");
  const std::size_t n = f.arity();
  const std::uint64_t trunc = f.trunc();
  const VarsPtr& vars = f.vars_ptr();

  linalg::Matrix<Rat> m(n, std::vector<Rat>(n));
  const Poly quadratic = f.body().homogeneous_part(2);
  for (const auto& t : quadratic.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < t.mono[i]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      m[idx[0]][idx[0]] = t.coef;
    } else {
      m[idx[0]][idx[1]] = t.coef / 2;
      m[idx[1]][idx[0]] = t.coef / 2;
    }
  }

  // Symmetric elimination: each pivot p contributes d * (x_p + sum c_j x_j)^2
  // with j ranging over variables not yet eliminated.
  std::vector<std::size_t> remaining(n);
  for (std::size_t i = 0; i < n; ++i) remaining[i] = i;
  std::vector<std::size_t> pivots;
  std::vector<Rat> scales;
  std::vector<std::vector<Rat>> forms;
  for (;;) {
    std::size_t p = n;
    for (std::size_t j : remaining)
      if (sgn(m[j][j]) != 0) {
        p = j;
        break;
      }
    if (p == n) {
      for (std::size_t j : remaining)
        for (std::size_t k : remaining)
          if (sgn(m[j][k]) != 0) return NotApplicable{"indefinite quadratic part"};
      break;
    }
    if (sgn(m[p][p]) < 0) return NotApplicable{"negative pivot"};
    const Rat d = m[p][p];
    std::vector<Rat> form(n);
    form[p] = 1;
    remaining.erase(std::find(remaining.begin(), remaining.end(), p));
    for (std::size_t j : remaining) form[j] = m[p][j] / d;
    for (std::size_t j : remaining)
      for (std::size_t k : remaining) m[j][k] -= m[j][p] * m[p][k] / d;
    pivots.push_back(p);
    scales.push_back(d);
    forms.push_back(std::move(form));
  }
  const std::size_t rank = pivots.size();
  if (rank + 2 < n) return NotApplicable{"rank " + std::to_string(rank) + " below arity - 2"};

  // New coordinates y = T x: the pivot forms, then the leftover variables.
  linalg::Matrix<Rat> t(n, std::vector<Rat>(n));
  for (std::size_t k = 0; k < rank; ++k) t[k] = forms[k];
  for (std::size_t j = 0; j < remaining.size(); ++j) t[rank + j][remaining[j]] = 1;
  linalg::Matrix<Rat> aug(n, std::vector<Rat>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = t[i][j];
    aug[i][n + i] = 1;
  }
  linalg::row_reduce(aug);

  const VarsPtr yvars = internal_vars(n);
  std::vector<TruncSeries> x_in_y;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rat> row(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end());
    x_in_y.emplace_back(linear_form(yvars, row), trunc);
  }
  std::vector<TruncSeries> y_in_x;
  for (std::size_t k = 0; k < n; ++k) y_in_x.emplace_back(linear_form(vars, t[k]), trunc);

  Poly fy = compose(f.body(), x_in_y).body();
  Poly quad(yvars);
  for (std::size_t k = 0; k < rank; ++k) quad += Poly::variable(yvars, k).pow(2) * scales[k];
  if (fy.homogeneous_part(2) != quad) throw DomainError("internal", "congruence did not diagonalize the quadratic part");
  AdicResult adic = adic_decompose(TruncSeries(fy - quad, trunc), rank, scales);

  SquareCompletion out{scales, {}, compose(adic.b, y_in_x), pivots, remaining};
  for (std::size_t k = 0; k < rank; ++k) out.roots.push_back(y_in_x[k] + compose(adic.a[k], y_in_x));
  return out;
}

namespace {

// One-variable series re-embedded as a function of variable `index` of vars.
TruncSeries embed_univariate(const TruncSeries& s, const VarsPtr& vars, std::size_t index) {
  std::vector<Term> terms;
  for (const auto& t : s.body().terms()) {
    Monomial m(vars->size());
    m.set(index, t.mono[0]);
    terms.push_back({m, t.coef});
  }
  return TruncSeries(Poly(vars, std::move(terms)), s.trunc());
}

}  // namespace

HatCoordinates hat_coordinates(std::uint64_t trunc) {
  const VarsPtr yv = make_vars({"y"});
  const VarsPtr zv = make_vars({"z"});
  const Poly y = Poly::variable(yv, std::size_t{0});
  const Poly z = Poly::variable(zv, std::size_t{0});
  const Poly one_y = Poly::constant(yv, Rat(1));
  const Poly one_z = Poly::constant(zv, Rat(1));
  TruncSeries y_hat(mul_truncated(y, nth_root_unit(TruncSeries(one_y - y.pow(2) + y.pow(3), trunc), 8).body(), trunc), trunc);
  TruncSeries z_hat(mul_truncated(z, nth_root_unit(TruncSeries(one_z - z * Rat(2), trunc), 2).body(), trunc), trunc);
  HatCoordinates hc{make_vars({"xh", "yh", "zh"}), y_hat, z_hat, reversion(y_hat), reversion(z_hat)};
  hc.y_of = TruncSeries(hc.y_of.body().with_vars(make_vars({"yh"})), trunc);
  hc.z_of = TruncSeries(hc.z_of.body().with_vars(make_vars({"zh"})), trunc);
  return hc;
}

TruncSeries hat_change(const Poly& p, const HatCoordinates& hc) {
  if (p.arity() != 3) throw ArityMismatch(p.arity(), 3, "hat_change");
  const std::uint64_t trunc = hc.y_of.trunc();
  std::vector<TruncSeries> images{TruncSeries::variable(hc.hat_vars, 0, trunc), embed_univariate(hc.y_of, hc.hat_vars, 1),
                                  embed_univariate(hc.z_of, hc.hat_vars, 2)};
  return compose(p, images);
}

TruncSeries hat_change(const Poly& p, std::uint64_t trunc) { return hat_change(p, hat_coordinates(trunc)); }

std::string format_series(const TruncSeries& s) {
  return "trunc: " + std::to_string(s.trunc()) + "\n" + format(s.body()) + "\n";
}

TruncSeries parse_series(std::string_view text, VarsPtr vars) {
  const std::size_t eol = text.find('\n');
  const std::string header(text.substr(0, eol));
  const std::string prefix = "trunc:";
  if (header.rfind(prefix, 0) != 0) throw ParseError(1, 1, "expected 'trunc: N' header");
  std::uint64_t trunc = 0;
  try {
    std::size_t used = 0;
    const std::string num = header.substr(prefix.size());
    trunc = std::stoull(num, &used);
    if (num.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(num);
  } catch (const std::exception&) {
    throw ParseError(1, prefix.size() + 1, "bad truncation order");
  }
  const std::string_view rest = eol == std::string_view::npos ? std::string_view("0") : text.substr(eol + 1);
  try {
    return TruncSeries(parse_poly(rest, std::move(vars)), trunc);
  } catch (const ParseError& e) {
    throw ParseError(e.line() + 1, e.column(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
  }
}

}  // namespace badpoints
