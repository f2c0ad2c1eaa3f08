#include "badpoints/poly.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "badpoints/error.hpp"

namespace badpoints {

namespace {

bool grevlex_desc(const Term& a, const Term& b) {
  return MonOrder::grevlex().compare(a.mono, b.mono) > 0;
}

void normalize(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), grevlex_desc);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  terms = std::move(out);
}

// Merges b (scaled by `sign`) into a; both sorted grevlex-descending.
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b, int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  const MonOrder order = MonOrder::grevlex();
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    int c = 0;
    if (i == a.size()) {
      c = -1;
    } else if (j == b.size()) {
      c = 1;
    } else {
      c = order.compare(a[i].mono, b[j].mono);
    }
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(sign > 0 ? b[j] : Term{b[j].mono, -b[j].coef});
      ++j;
    } else {
      Rat s = sign > 0 ? Rat(a[i].coef + b[j].coef) : Rat(a[i].coef - b[j].coef);
      if (sgn(s) != 0) out.push_back({a[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<Term> from_map(std::unordered_map<Monomial, Rat, MonomialHash>& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (sgn(c) != 0) out.push_back({m, std::move(c)});
  std::sort(out.begin(), out.end(), grevlex_desc);
  return out;
}

bool same_vars(const VarsPtr& a, const VarsPtr& b) { return a == b || *a == *b; }

}  // namespace

VarsPtr make_vars(VarList names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw DomainError("duplicate_variable", "variable '" + names[i] + "' declared twice");
  if (names.empty()) throw DomainError("empty_variables", "variable list must not be empty");
  if (names.size() > kMaxArity)
    throw DomainError("arity_limit", "at most " + std::to_string(kMaxArity) + " variables are supported");
  return std::make_shared<const VarList>(std::move(names));
}

Poly::Poly(VarsPtr vars) : vars_(std::move(vars)) {}

Poly::Poly(VarsPtr vars, std::vector<Term> terms) : vars_(std::move(vars)), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.mono.arity() != vars_->size()) throw ArityMismatch(t.mono.arity(), vars_->size(), "Poly term");
  normalize(terms_);
}

Poly Poly::constant(VarsPtr vars, const Rat& c) {
  const std::size_t n = vars->size();
  return Poly(std::move(vars), {Term{Monomial(n), c}});
}

Poly Poly::variable(VarsPtr vars, std::size_t index) {
  Monomial m(vars->size());
  m.set(index, 1);
  return Poly(std::move(vars), {Term{m, Rat(1)}});
}

Poly Poly::variable(VarsPtr vars, const std::string& name) {
  Poly probe(vars);
  return variable(vars, probe.var_index(name));
}

Poly Poly::monomial(VarsPtr vars, const Monomial& m, const Rat& c) {
  return Poly(std::move(vars), {Term{m, c}});
}

std::size_t Poly::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_->size(); ++i)
    if ((*vars_)[i] == name) return i;
  throw DomainError("unknown_variable", "unknown variable '" + name + "'");
}

std::uint64_t Poly::total_degree() const {
  if (is_zero()) throw DomainError("zero_polynomial", "degree of the zero polynomial is undefined");
  // Grevlex puts the highest degree first.
  return terms_.front().mono.degree();
}

std::uint64_t Poly::low_degree() const {
  if (is_zero()) throw DomainError("zero_polynomial", "order of the zero polynomial is undefined");
  return terms_.back().mono.degree();
}

Rat Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& key) {
    return MonOrder::grevlex().compare(t.mono, key) > 0;
  });
  if (it != terms_.end() && it->mono == m) return it->coef;
  return Rat(0);
}

Rat Poly::constant_term() const { return coeff(Monomial(arity())); }

const Term& Poly::leading_term() const {
  if (is_zero()) throw DomainError("zero_polynomial", "leading term of the zero polynomial");
  return terms_.front();
}

Poly Poly::homogeneous_part(std::uint64_t degree) const {
  Poly out(vars_);
  for (const auto& t : terms_)
    if (t.mono.degree() == degree) out.terms_.push_back(t);
  return out;
}

Poly Poly::truncated(std::uint64_t max_degree) const {
  Poly out(vars_);
  for (const auto& t : terms_)
    if (t.mono.degree() <= max_degree) out.terms_.push_back(t);
  return out;
}

Poly Poly::with_vars(VarsPtr vars) const {
  if (vars->size() != arity()) throw ArityMismatch(arity(), vars->size(), "with_vars");
  Poly out(std::move(vars));
  out.terms_ = terms_;
  return out;
}

void Poly::require_compatible(const Poly& o, const char* where) const {
  if (arity() != o.arity()) throw ArityMismatch(arity(), o.arity(), where);
  if (!same_vars(vars_, o.vars_)) throw DomainError("variable_mismatch", std::string(where) + ": variable lists differ");
}

Poly& Poly::operator+=(const Poly& o) {
  require_compatible(o, "add");
  terms_ = merge(terms_, o.terms_, +1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  require_compatible(o, "sub");
  terms_ = merge(terms_, o.terms_, -1);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rat& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.require_compatible(b, "mul");
  Poly out(a.vars_);
  if (a.is_zero() || b.is_zero()) return out;
  if (b.terms_.size() == 1) {
    out.terms_ = a.terms_;
    for (auto& t : out.terms_) {
      t.mono *= b.terms_[0].mono;
      t.coef *= b.terms_[0].coef;
    }
    return out;  // multiplying by a monomial preserves the order
  }
  std::unordered_map<Monomial, Rat, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coef * t.coef;
  out.terms_ = from_map(acc);
  return out;
}

Poly operator-(const Poly& a) {
  Poly out = a;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

bool operator==(const Poly& a, const Poly& b) {
  return a.arity() == b.arity() && same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result = constant(vars_, Rat(1));
  Poly base = *this;
  while (exponent != 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent != 0) base = base * base;
  }
  return result;
}

Poly mul_truncated(const Poly& a, const Poly& b, std::uint64_t max_degree) {
  a.require_compatible(b, "mul");
  std::vector<const Term*> bs;
  bs.reserve(b.size());
  for (const auto& t : b.terms()) bs.push_back(&t);
  std::sort(bs.begin(), bs.end(), [](const Term* x, const Term* y) { return x->mono.degree() < y->mono.degree(); });
  std::unordered_map<Monomial, Rat, MonomialHash> acc;
  for (const auto& s : a.terms()) {
    if (s.mono.degree() > max_degree) continue;
    const std::uint64_t room = max_degree - s.mono.degree();
    for (const Term* t : bs) {
      if (t->mono.degree() > room) break;
      acc[s.mono * t->mono] += s.coef * t->coef;
    }
  }
  return Poly(a.vars_ptr(), from_map(acc));
}

Poly arith(const Poly& a, const Poly& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::add:
      return a + b;
    case ArithKind::sub:
      return a - b;
    case ArithKind::mul:
      return a * b;
  }
  return a;
}

Poly substitute(const Poly& p, std::span<const Poly> images) {
  if (images.size() != p.arity()) throw ArityMismatch(p.arity(), images.size(), "substitute");
  if (images.empty()) throw DomainError("missing_image", "substitute: no images");
  const VarsPtr& target = images[0].vars_ptr();
  for (const auto& img : images) images[0].require_compatible(img, "substitute images");
  // powers[i][e] = images[i]^e, filled on demand
  std::vector<std::vector<Poly>> powers(p.arity());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Poly::constant(target, Rat(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly result(target);
  for (const auto& t : p.terms()) {
    Poly term = Poly::constant(target, t.coef);
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (t.mono[i] != 0) term = term * power(i, t.mono[i]);
    result += term;
  }
  return result;
}

Poly substitute(const Poly& p, const std::map<std::string, Poly>& images) {
  std::vector<Poly> ordered;
  ordered.reserve(p.arity());
  if (images.empty()) throw DomainError("missing_image", "substitute: no images");
  const Poly& any = images.begin()->second;
  for (std::size_t i = 0; i < p.arity(); ++i) {
    auto it = images.find(p.vars()[i]);
    if (it != images.end()) {
      ordered.push_back(it->second);
      continue;
    }
    // Variables absent from p may go without an image.
    bool used = std::any_of(p.terms().begin(), p.terms().end(), [&](const Term& t) { return t.mono[i] != 0; });
    if (used) throw DomainError("missing_image", "substitute: no image for variable '" + p.vars()[i] + "'");
    ordered.push_back(Poly(any.vars_ptr()));
  }
  return substitute(p, ordered);
}

namespace {

template <typename Value>
Value evaluate_impl(const Poly& p, std::span<const Value> point) {
  if (point.size() != p.arity()) throw ArityMismatch(p.arity(), point.size(), "evaluate");
  std::vector<std::vector<Value>> powers(p.arity());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Value& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(Value(Rat(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
    return cache[e];
  };
  Value sum(Rat(0));
  for (const auto& t : p.terms()) {
    Value term(t.coef);
    for (std::size_t i = 0; i < p.arity(); ++i)
      if (t.mono[i] != 0) term = term * power(i, t.mono[i]);
    sum = sum + term;
  }
  return sum;
}

}  // namespace

GaussRat evaluate(const Poly& p, std::span<const GaussRat> point) { return evaluate_impl<GaussRat>(p, point); }

Rat evaluate_rational(const Poly& p, std::span<const Rat> point) {
  if (point.size() != p.arity()) throw ArityMismatch(p.arity(), point.size(), "evaluate");
  std::vector<std::vector<Rat>> powers(p.arity());
  Rat sum(0);
  for (const auto& t : p.terms()) {
    Rat term = t.coef;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      const std::uint32_t e = t.mono[i];
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(Rat(1));
      while (cache.size() <= e) cache.push_back(cache.back() * point[i]);
      term *= cache[e];
    }
    sum += term;
  }
  return sum;
}

Poly derivative(const Poly& p, std::size_t index) {
  if (index >= p.arity()) throw DomainError("unknown_variable", "derivative: variable index out of range");
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    const std::uint32_t e = t.mono[index];
    if (e == 0) continue;
    Monomial m = t.mono;
    m.set(index, e - 1);
    out.push_back({m, t.coef * e});
  }
  return Poly(p.vars_ptr(), std::move(out));
}

Poly derivative(const Poly& p, const std::string& var) { return derivative(p, p.var_index(var)); }

std::vector<std::vector<Poly>> hessian(const Poly& p) {
  const std::size_t n = p.arity();
  std::vector<Poly> first;
  first.reserve(n);
  for (std::size_t i = 0; i < n; ++i) first.push_back(derivative(p, i));
  std::vector<std::vector<Poly>> h(n, std::vector<Poly>(n, Poly(p.vars_ptr())));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      h[i][j] = derivative(first[i], j);
      h[j][i] = h[i][j];
    }
  return h;
}

Poly determinant(const std::vector<std::vector<Poly>>& m) {
  const std::size_t n = m.size();
  if (n == 0) throw DomainError("empty_matrix", "determinant of an empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("not_square", "determinant of a non-square matrix");
  if (n == 1) return m[0][0];
  if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
  Poly det(m[0][0].vars_ptr());
  for (std::size_t col = 0; col < n; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<Poly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Poly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    Poly term = m[0][col] * determinant(minor);
    if (col % 2 == 0) {
      det += term;
    } else {
      det -= term;
    }
  }
  return det;
}

}  // namespace badpoints
