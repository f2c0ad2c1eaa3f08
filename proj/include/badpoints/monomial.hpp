#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace badpoints {

// Ambient variable counts are small throughout (3 or 4 plus one auxiliary
// elimination variable), so exponent vectors live inline.
inline constexpr std::size_t kMaxArity = 8;

class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t arity);
  Monomial(std::initializer_list<Exponent> exponents);
  explicit Monomial(std::span<const Exponent> exponents);

  std::size_t arity() const { return arity_; }
  std::uint64_t degree() const { return degree_; }
  Exponent operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, Exponent e);
  std::vector<Exponent> exponents() const { return {exps_.begin(), exps_.begin() + arity_}; }

  bool is_one() const { return degree_ == 0; }
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  // Caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;
  Monomial& operator*=(const Monomial& other);
  friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.arity_ == b.arity_ && a.degree_ == b.degree_ && a.exps_ == b.exps_;
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const;

  // New monomial with `count` zero exponents inserted in front.
  Monomial prepend_zeros(std::size_t count) const;
  // Drops the first `count` exponents.
  Monomial drop_front(std::size_t count) const;

 private:
  std::array<Exponent, kMaxArity> exps_{};
  std::uint8_t arity_ = 0;
  std::uint64_t degree_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

// Total orders on monomials of a fixed arity. Elimination orders compare
// the first `block` variables by grevlex first and break ties by grevlex on
// the remaining ones.
class MonOrder {
 public:
  enum class Kind { grevlex, lex, elimination };

  static MonOrder grevlex() { return MonOrder(Kind::grevlex, 0); }
  static MonOrder lex() { return MonOrder(Kind::lex, 0); }
  static MonOrder elimination(std::size_t block) { return MonOrder(Kind::elimination, block); }

  Kind kind() const { return kind_; }
  std::size_t block() const { return block_; }

  // <0, 0, >0 as a is smaller, equal, larger than b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  std::string name() const;
  static MonOrder parse(const std::string& text);

  friend bool operator==(const MonOrder& a, const MonOrder& b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

 private:
  MonOrder(Kind kind, std::size_t block) : kind_(kind), block_(block) {}
  Kind kind_;
  std::size_t block_;
};

// Grevlex restricted to the index range [begin, end).
int grevlex_compare(const Monomial& a, const Monomial& b, std::size_t begin, std::size_t end);

}  // namespace badpoints
