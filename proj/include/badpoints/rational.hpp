#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace badpoints {

// mpq_class keeps numerator and denominator coprime with a positive
// denominator after every arithmetic operation; values built from raw
// integer pairs go through make_rat() which canonicalizes.
using Rat = mpq_class;
using Int = mpz_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(long num, long den = 1);

// Accepts "3", "-3", "3/4".
Rat parse_rat(std::string_view text);
std::string to_string(const Rat& r);

inline int sign(const Rat& r) { return sgn(r); }

// Element of Q(i). Only used for evaluating polynomials at points.
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat r) : re(std::move(r)) {}  // NOLINT(implicit)
  GaussRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return {Rat(0), Rat(1)}; }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  GaussRat conj() const { return {re, -im}; }
  Rat norm() const { return re * re + im * im; }
  GaussRat inverse() const;

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o) { return *this *= o.inverse(); }

  friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
  friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
  friend GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

GaussRat pow(const GaussRat& base, unsigned exponent);

// "2", "-1/2", "i", "-i", "3/4+2i", "1-i/2" style text.
GaussRat parse_gauss(std::string_view text);
std::string to_string(const GaussRat& z);

}  // namespace badpoints
