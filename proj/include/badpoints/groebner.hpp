#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "badpoints/monomial.hpp"
#include "badpoints/poly.hpp"

namespace badpoints {

inline constexpr std::size_t kDefaultStepBudget = 1'000'000;

struct GroebnerOptions {
  // Counts top-reduction steps across the whole computation.
  std::size_t step_budget = kDefaultStepBudget;
  // Gebauer-Moeller pair pruning on top of the coprime-leading-term
  // criterion. The reduced basis does not depend on it.
  bool chain_criterion = true;
};

// Budget from BADPOINTS_STEP_BUDGET when set, kDefaultStepBudget otherwise.
GroebnerOptions default_groebner_options();

struct GroebnerBasis {
  MonOrder order = MonOrder::grevlex();
  // Reduced, monic, sorted by leading monomial (ascending in `order`).
  std::vector<Poly> basis;
};

class Ideal {
 public:
  Ideal(VarsPtr vars, std::vector<Poly> generators);

  const VarsPtr& vars_ptr() const { return vars_; }
  std::size_t arity() const { return vars_->size(); }
  const std::vector<Poly>& generators() const { return generators_; }

  bool has_basis() const { return gb_.has_value(); }
  const GroebnerBasis& basis() const;
  Ideal with_basis(GroebnerBasis gb) const;

 private:
  VarsPtr vars_;
  std::vector<Poly> generators_;
  std::optional<GroebnerBasis> gb_;
};

// f = sum(cofactors[i] * basis[i]) + remainder.
struct MembershipWitness {
  Poly target;
  std::vector<Poly> cofactors;
  Poly remainder;

  bool is_member() const { return remainder.is_zero(); }
};

// Leading term of p under `order` (p nonzero).
Term leading_term(const Poly& p, const MonOrder& order);

Ideal groebner(const Ideal& ideal, const MonOrder& order, const GroebnerOptions& options = default_groebner_options());

// Requires a cached basis.
MembershipWitness normal_form(const Poly& f, const Ideal& ideal);
// Remainder of f modulo a list already known to be a Groebner basis.
Poly reduce(const Poly& f, const std::vector<Poly>& basis, const MonOrder& order);
Poly s_polynomial(const Poly& f, const Poly& g, const MonOrder& order);

// True when every S-polynomial reduces to zero.
bool buchberger_criterion(const std::vector<Poly>& basis, const MonOrder& order);

Ideal ideal_product(const Ideal& a, const Ideal& b);
Ideal ideal_power(const Ideal& a, unsigned exponent);

// (I : f) via I ∩ <f> computed with one auxiliary elimination variable. The
// result carries its reduced grevlex basis.
Ideal ideal_quotient(const Ideal& ideal, const Poly& f, const GroebnerOptions& options = default_groebner_options());

// Exact division; throws when `divisor` does not divide `p`.
Poly divide_exact(const Poly& p, const Poly& divisor);

struct LocalMembership {
  bool member = false;
  Ideal quotient;
  // member: the witness g in (I : f) with g(point) != 0.
  std::optional<Poly> witness;
  // Evaluations of the quotient basis at the point.
  std::vector<GaussRat> evaluations;
};

// f in I localized at the maximal ideal of `point` (and its conjugate).
LocalMembership member_localized(const Poly& f, const Ideal& ideal, std::span<const GaussRat> point,
                                 const GroebnerOptions& options = default_groebner_options());

struct OrderObstruction {
  std::uint64_t order;       // ord_0(f)
  std::uint64_t bound;       // 2 * min ord_0(g_i)
};

// Obstruction iff ord(f) < 2 * min ord(g_i): f is then outside I^2 localized
// at the origin.
std::optional<OrderObstruction> local_order_bound(const Poly& f, const Ideal& ideal);

// Krull dimension of R/I from the leading-term ideal. Requires a basis.
std::size_t dimension(const Ideal& ideal);

// Rank of the Jacobian of `gens` at a common zero.
std::size_t jacobian_rank_at(const std::vector<Poly>& gens, std::span<const GaussRat> point);

}  // namespace badpoints
