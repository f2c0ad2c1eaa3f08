#include <cctype>
#include <string>

#include "badpoints/error.hpp"
#include "badpoints/poly.hpp"

namespace badpoints {

std::string format_monomial(const Monomial& m, const VarList& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars[i];
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string format(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    const bool negative = sgn(t.coef) < 0;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    Rat magnitude = abs(t.coef);
    if (t.mono.is_one()) {
      out += to_string(magnitude);
    } else if (magnitude == 1) {
      out += format_monomial(t.mono, p.vars());
    } else {
      out += to_string(magnitude) + '*' + format_monomial(t.mono, p.vars());
    }
  }
  return out;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, VarsPtr vars) : text_(text), vars_(std::move(vars)) {}

  Poly parse() {
    Poly result = expression();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

 private:
  // expression := ['+'|'-'] term (('+'|'-') term)*
  Poly expression() {
    skip_space();
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = peek() == '-';
      ++pos_;
    }
    Poly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Poly rhs = term();
      if (c == '+') {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip_space();
      if (peek() != '*') break;
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  Poly factor() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Poly inner = expression();
      skip_space();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner.pow(exponent());
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      Int num = natural("number");
      Int den(1);
      skip_space();
      if (peek() == '/') {
        ++pos_;
        skip_space();
        den = natural("denominator");
        if (den == 0) fail("zero denominator");
      }
      return Poly::constant(vars_, make_rat(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      std::size_t index = vars_->size();
      for (std::size_t i = 0; i < vars_->size(); ++i)
        if ((*vars_)[i] == name) index = i;
      if (index == vars_->size()) fail_at(start, "unknown variable '" + name + "'");
      Monomial m(vars_->size());
      m.set(index, 1);
      const unsigned e = exponent();
      m.set(index, e);
      return Poly::monomial(vars_, m);
    }
    if (pos_ >= text_.size()) fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  unsigned exponent() {
    skip_space();
    if (peek() != '^') return 1;
    ++pos_;
    skip_space();
    Int e = natural("exponent");
    if (e > 100000) fail("exponent too large");
    return static_cast<unsigned>(e.get_ui());
  }

  Int natural(const char* what) {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail(std::string("expected ") + what);
    return Int(std::string(text_.substr(start, pos_ - start)), 10);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }

  [[noreturn]] void fail_at(std::size_t at, const std::string& what) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(line, col, what);
  }

  std::string_view text_;
  VarsPtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, VarsPtr vars) { return Parser(text, std::move(vars)).parse(); }

}  // namespace badpoints
