#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "badpoints/monomial.hpp"
#include "badpoints/rational.hpp"

namespace badpoints {

using VarList = std::vector<std::string>;
using VarsPtr = std::shared_ptr<const VarList>;

VarsPtr make_vars(VarList names);

struct Term {
  Monomial mono;
  Rat coef;

  friend bool operator==(const Term& a, const Term& b) { return a.mono == b.mono && a.coef == b.coef; }
};

// Sparse polynomial over Q in a fixed, named list of variables. Terms are kept
// sorted by grevlex, largest first, with no zero coefficients, so equal
// polynomials have identical term vectors.
class Poly {
 public:
  explicit Poly(VarsPtr vars);
  Poly(VarsPtr vars, std::vector<Term> terms);

  static Poly constant(VarsPtr vars, const Rat& c);
  static Poly variable(VarsPtr vars, std::size_t index);
  static Poly variable(VarsPtr vars, const std::string& name);
  static Poly monomial(VarsPtr vars, const Monomial& m, const Rat& c = Rat(1));

  const VarsPtr& vars_ptr() const { return vars_; }
  const VarList& vars() const { return *vars_; }
  std::size_t arity() const { return vars_->size(); }
  std::size_t var_index(const std::string& name) const;

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  // Degree-dependent queries reject the zero polynomial.
  std::uint64_t total_degree() const;
  // Least total degree of a term (the order at the origin).
  std::uint64_t low_degree() const;

  Rat coeff(const Monomial& m) const;
  Rat constant_term() const;
  const Term& leading_term() const;

  Poly homogeneous_part(std::uint64_t degree) const;
  Poly truncated(std::uint64_t max_degree) const;
  // Same terms, different variable names (arity must match).
  Poly with_vars(VarsPtr vars) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& c) { return a *= c; }
  friend Poly operator*(const Rat& c, Poly a) { return a *= c; }
  friend Poly operator-(const Poly& a);

  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned exponent) const;

  // Checks that `o` lives over the same variable list.
  void require_compatible(const Poly& o, const char* where) const;

 private:
  VarsPtr vars_;
  std::vector<Term> terms_;
};

// Product keeping only terms of total degree <= max_degree.
Poly mul_truncated(const Poly& a, const Poly& b, std::uint64_t max_degree);

enum class ArithKind { add, sub, mul };
Poly arith(const Poly& a, const Poly& b, ArithKind kind);

// Composition p(images[0], ..., images[n-1]). Images are indexed by variable
// name; every variable that occurs in p needs an image and all images share
// the target variable list.
Poly substitute(const Poly& p, const std::map<std::string, Poly>& images);
Poly substitute(const Poly& p, std::span<const Poly> images);

GaussRat evaluate(const Poly& p, std::span<const GaussRat> point);
Rat evaluate_rational(const Poly& p, std::span<const Rat> point);

Poly derivative(const Poly& p, const std::string& var);
Poly derivative(const Poly& p, std::size_t index);
std::vector<std::vector<Poly>> hessian(const Poly& p);

// Determinant by cofactor expansion; matrices here are at most 4x4.
Poly determinant(const std::vector<std::vector<Poly>>& m);

// Canonical text form (grevlex, largest term first) and the grammar parser.
std::string format(const Poly& p);
std::string format_monomial(const Monomial& m, const VarList& vars);
Poly parse_poly(std::string_view text, VarsPtr vars);

}  // namespace badpoints
