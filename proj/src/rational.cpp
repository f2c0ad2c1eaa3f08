#include "badpoints/rational.hpp"

#include <cctype>

#include "badpoints/error.hpp"

namespace badpoints {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("division_by_zero", "rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : s.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den))
    throw DomainError("bad_rational", "not a rational number: '" + std::string(text) + "'");
  Int n(std::string(num), 10);
  Int d(std::string(den), 10);
  if (d == 0) throw DomainError("division_by_zero", "zero denominator in '" + std::string(text) + "'");
  if (negative) n = -n;
  return make_rat(n, d);
}

std::string to_string(const Rat& r) { return r.get_str(); }

GaussRat GaussRat::inverse() const {
  Rat n = norm();
  if (sgn(n) == 0) throw DomainError("division_by_zero", "inverse of zero in Q(i)");
  return {re / n, -im / n};
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  Rat r = re * o.re - im * o.im;
  Rat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRat pow(const GaussRat& base, unsigned exponent) {
  GaussRat result(Rat(1));
  GaussRat b = base;
  while (exponent != 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent != 0) b *= b;
  }
  return result;
}

GaussRat parse_gauss(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw DomainError("bad_rational", "empty Gaussian rational");
  auto i_pos = s.find('i');
  if (i_pos == std::string::npos) return GaussRat(parse_rat(s));
  // Split at the last sign that is not the leading character and belongs to
  // the imaginary part, e.g. "3/4-2i" -> "3/4" and "-2i".
  std::size_t split = 0;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && k < i_pos) {
      split = k;
      break;
    }
  }
  std::string real_part = s.substr(0, split);
  std::string imag_part = s.substr(split);
  if (real_part.empty()) real_part = "0";
  // imag_part is one of: "i", "-i", "+i", "2i", "-2i", "i/2", "-i/2", "2/3i", "2*i".
  std::string coef;
  std::string den;
  auto ip = imag_part.find('i');
  coef = imag_part.substr(0, ip);
  std::string tail = imag_part.substr(ip + 1);
  if (!coef.empty() && coef.back() == '*') coef.pop_back();
  if (coef.empty() || coef == "+") coef = "1";
  if (coef == "-") coef = "-1";
  Rat im = parse_rat(coef);
  if (!tail.empty()) {
    if (tail.front() != '/') throw DomainError("bad_rational", "bad Gaussian rational '" + std::string(text) + "'");
    im /= parse_rat(tail.substr(1));
  }
  return {parse_rat(real_part), im};
}

std::string to_string(const GaussRat& z) {
  if (z.is_real()) return to_string(z.re);
  std::string out;
  if (sgn(z.re) != 0) out = to_string(z.re);
  Rat im = z.im;
  if (sgn(im) < 0) {
    out += "-";
    im = -im;
  } else if (!out.empty()) {
    out += "+";
  }
  if (im != 1) out += to_string(im) + "*";
  out += "i";
  return out;
}

}  // namespace badpoints
