#include "badpoints/monomial.hpp"

#include <algorithm>
#include <string>

#include "badpoints/error.hpp"

namespace badpoints {

namespace {

void check_arity(std::size_t arity) {
  if (arity > kMaxArity)
    throw DomainError("arity_limit", "arity " + std::to_string(arity) + " exceeds supported maximum " +
                                         std::to_string(kMaxArity));
}

}  // namespace

Monomial::Monomial(std::size_t arity) {
  check_arity(arity);
  arity_ = static_cast<std::uint8_t>(arity);
}

Monomial::Monomial(std::initializer_list<Exponent> exponents)
    : Monomial(std::span<const Exponent>(exponents.begin(), exponents.size())) {}

Monomial::Monomial(std::span<const Exponent> exponents) {
  check_arity(exponents.size());
  arity_ = static_cast<std::uint8_t>(exponents.size());
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    exps_[i] = exponents[i];
    degree_ += exponents[i];
  }
}

void Monomial::set(std::size_t i, Exponent e) {
  degree_ = degree_ - exps_[i] + e;
  exps_[i] = e;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < arity_; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < arity_; ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < arity_; ++i) r.exps_[i] -= other.exps_[i];
  r.degree_ -= other.degree_;
  return r;
}

Monomial& Monomial::operator*=(const Monomial& other) {
  for (std::size_t i = 0; i < arity_; ++i) exps_[i] += other.exps_[i];
  degree_ += other.degree_;
  return *this;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i) r.set(i, std::max(a.exps_[i], b.exps_[i]));
  return r;
}

Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r(a.arity_);
  for (std::size_t i = 0; i < a.arity_; ++i) r.set(i, std::min(a.exps_[i], b.exps_[i]));
  return r;
}

std::size_t Monomial::hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < arity_; ++i) {
    h ^= exps_[i];
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

Monomial Monomial::prepend_zeros(std::size_t count) const {
  check_arity(arity_ + count);
  Monomial r(arity_ + count);
  for (std::size_t i = 0; i < arity_; ++i) r.set(i + count, exps_[i]);
  return r;
}

Monomial Monomial::drop_front(std::size_t count) const {
  Monomial r(arity_ - count);
  for (std::size_t i = count; i < arity_; ++i) r.set(i - count, exps_[i]);
  return r;
}

int grevlex_compare(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end) {
  std::uint64_t da = 0;
  std::uint64_t db = 0;
  for (std::size_t i = begin; i < end; ++i) {
    da += a[i];
    db += b[i];
  }
  if (da != db) return da < db ? -1 : 1;
  for (std::size_t i = end; i-- > begin;) {
    if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

int MonOrder::compare(const Monomial& a, const Monomial& b) const {
  const std::size_t n = a.arity();
  switch (kind_) {
    case Kind::grevlex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (std::size_t i = n; i-- > 0;)
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
      return 0;
    case Kind::lex:
      for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
      return 0;
    case Kind::elimination: {
      const std::size_t k = std::min(block_, n);
      if (int c = grevlex_compare(a, b, 0, k); c != 0) return c;
      return grevlex_compare(a, b, k, n);
    }
  }
  return 0;
}

std::string MonOrder::name() const {
  switch (kind_) {
    case Kind::grevlex:
      return "grevlex";
    case Kind::lex:
      return "lex";
    case Kind::elimination:
      return "elimination(" + std::to_string(block_) + ")";
  }
  return "?";
}

MonOrder MonOrder::parse(const std::string& text) {
  if (text == "grevlex") return grevlex();
  if (text == "lex") return lex();
  const std::string prefix = "elimination(";
  if (text.rfind(prefix, 0) == 0 && text.back() == ')') {
    const std::string inner = text.substr(prefix.size(), text.size() - prefix.size() - 1);
    try {
      return elimination(static_cast<std::size_t>(std::stoul(inner)));
    } catch (const std::exception&) {
    }
  }
  throw DomainError("bad_order", "unknown monomial order '" + text + "'");
}

}  // namespace badpoints
