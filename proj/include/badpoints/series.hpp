#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "badpoints/poly.hpp"

namespace badpoints {

// Power series known exactly through total degree N. The body never holds a
// term of degree > N.
class TruncSeries {
 public:
  TruncSeries(Poly body, std::uint64_t trunc);

  static TruncSeries constant(VarsPtr vars, const Rat& c, std::uint64_t trunc);
  static TruncSeries variable(VarsPtr vars, std::size_t index, std::uint64_t trunc);

  const Poly& body() const { return body_; }
  std::uint64_t trunc() const { return trunc_; }
  const VarsPtr& vars_ptr() const { return body_.vars_ptr(); }
  std::size_t arity() const { return body_.arity(); }

  Rat coeff(const Monomial& m) const;
  Rat constant_term() const { return body_.constant_term(); }
  TruncSeries truncated(std::uint64_t trunc) const;

  TruncSeries& operator+=(const TruncSeries& o);
  TruncSeries& operator-=(const TruncSeries& o);
  friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
  friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
  friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
  friend TruncSeries operator*(TruncSeries a, const Rat& c);
  friend TruncSeries operator*(const Rat& c, TruncSeries a) { return std::move(a) * c; }
  friend TruncSeries operator-(const TruncSeries& a);

  // Equal through the smaller of the two truncation orders.
  friend bool operator==(const TruncSeries& a, const TruncSeries& b);

  TruncSeries pow(unsigned exponent) const;

 private:
  Poly body_;
  std::uint64_t trunc_;
};

TruncSeries series_arith(const TruncSeries& a, const TruncSeries& b, ArithKind kind);

struct SeriesOrder {
  bool exact;           // false: body is zero, order is at least `value`
  std::uint64_t value;  // exact order, or N + 1

  friend bool operator==(const SeriesOrder&, const SeriesOrder&) = default;
};

SeriesOrder order(const TruncSeries& s);

// r with r^n = s and r(0) = 1. Requires s(0) = 1.
TruncSeries nth_root_unit(const TruncSeries& s, unsigned n);

// Compositional inverse of a one-variable series with s(0) = 0, s'(0) != 0.
TruncSeries reversion(const TruncSeries& s);

// p(images). Polynomials compose with arbitrary images; the result is exact
// through the smallest image truncation.
TruncSeries compose(const Poly& p, std::span<const TruncSeries> images);
// s(images) for images without constant term; truncated at min(N_s, N_images).
TruncSeries compose(const TruncSeries& s, std::span<const TruncSeries> images);

// s / m for a monomial m dividing every term of s; truncation drops by deg m.
TruncSeries divide_by_monomial(const TruncSeries& s, const Monomial& m);

// Split of sum_{i<r} scale_i x_i^2 + g as sum_{i<r} scale_i (x_i + a_i)^2 + b.
struct AdicResult {
  std::vector<TruncSeries> a;
  TruncSeries b;
  std::uint64_t verified_to;
};

// Unit scales; g must have no term of degree < 3.
AdicResult adic_decompose(const TruncSeries& g, std::size_t r);
AdicResult adic_decompose(const TruncSeries& g, std::size_t r, std::span<const Rat> scales);

// The homogeneous form split used by one adic step: form = sum x_i u_i + v
// where a monomial goes to the smallest i < r dividing it and otherwise to v.
struct LayerSplit {
  std::vector<Poly> u;
  Poly v;
};
LayerSplit split_layer(const Poly& form, std::size_t r);

struct SquareCompletion {
  // f = sum scales[k] * roots[k]^2 + residual through N.
  std::vector<Rat> scales;
  std::vector<TruncSeries> roots;
  TruncSeries residual;
  // Variables used as pivots, in elimination order; the residual lives in
  // the remaining ones.
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> residual_vars;
};

struct NotApplicable {
  std::string reason;
};

// Diagonalizes the quadratic part by rational congruence, then completes
// squares with the adic iteration. Requires order(f) = 2.
std::variant<SquareCompletion, NotApplicable> complete_squares(const TruncSeries& f);

// Coordinates xh = x, yh = y (1 - y^2 + y^3)^(1/8), zh = z (1 - 2z)^(1/2).
struct HatCoordinates {
  VarsPtr hat_vars;    // xh, yh, zh
  TruncSeries y_hat;   // yh as a series in y
  TruncSeries z_hat;   // zh as a series in z
  TruncSeries y_of;    // y as a series in yh
  TruncSeries z_of;    // z as a series in zh
};

HatCoordinates hat_coordinates(std::uint64_t trunc);

// p(x, y, z) rewritten in hat coordinates through total degree N.
TruncSeries hat_change(const Poly& p, std::uint64_t trunc);
TruncSeries hat_change(const Poly& p, const HatCoordinates& hc);

// "trunc: N" header line followed by the body.
std::string format_series(const TruncSeries& s);
TruncSeries parse_series(std::string_view text, VarsPtr vars);

}  // namespace badpoints
