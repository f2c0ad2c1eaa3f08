#include "badpoints/groebner.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "badpoints/error.hpp"
#include "badpoints/linalg.hpp"

namespace badpoints {

GroebnerOptions default_groebner_options() {
  GroebnerOptions opts;
  if (const char* env = std::getenv("BADPOINTS_STEP_BUDGET")) {
    try {
      opts.step_budget = static_cast<std::size_t>(std::stoull(env));
    } catch (const std::exception&) {
      throw DomainError("bad_budget", std::string("BADPOINTS_STEP_BUDGET is not a number: ") + env);
    }
  }
  return opts;
}

Ideal::Ideal(VarsPtr vars, std::vector<Poly> generators) : vars_(std::move(vars)), generators_(std::move(generators)) {
  for (const auto& g : generators_) {
    if (g.arity() != vars_->size()) throw ArityMismatch(g.arity(), vars_->size(), "Ideal generator");
  }
}

const GroebnerBasis& Ideal::basis() const {
  if (!gb_) throw DomainError("no_basis", "ideal has no cached Groebner basis");
  return *gb_;
}

Ideal Ideal::with_basis(GroebnerBasis gb) const {
  Ideal out = *this;
  out.gb_ = std::move(gb);
  return out;
}

namespace {

// Polynomial keyed by a monomial order, largest monomial first. Used as the
// working representation during reduction.
class OrderedPoly {
 public:
  struct Greater {
    const MonOrder* order;
    bool operator()(const Monomial& a, const Monomial& b) const { return order->compare(a, b) > 0; }
  };
  using Map = std::map<Monomial, Rat, Greater>;

  explicit OrderedPoly(const MonOrder& order) : terms_(Greater{&order}) {}
  OrderedPoly(const Poly& p, const MonOrder& order) : terms_(Greater{&order}) {
    for (const auto& t : p.terms()) terms_.emplace(t.mono, t.coef);
  }

  bool empty() const { return terms_.empty(); }
  const Monomial& lead_mono() const { return terms_.begin()->first; }
  const Rat& lead_coef() const { return terms_.begin()->second; }
  void pop_lead() { terms_.erase(terms_.begin()); }

  // this -= c * m * g
  void sub_mul(const Rat& c, const Monomial& m, const Poly& g) {
    for (const auto& t : g.terms()) {
      auto [it, inserted] = terms_.try_emplace(m * t.mono);
      it->second -= c * t.coef;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  void add_term(const Monomial& m, const Rat& c) {
    auto [it, inserted] = terms_.try_emplace(m);
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }

  Poly to_poly(const VarsPtr& vars) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& [m, c] : terms_) out.push_back({m, c});
    return Poly(vars, std::move(out));
  }

 private:
  Map terms_;
};

struct BasisEntry {
  Poly poly;
  Monomial lead;
  Rat lead_coef;
};

BasisEntry make_entry(Poly p, const MonOrder& order) {
  Term lt = leading_term(p, order);
  return {std::move(p), lt.mono, lt.coef};
}

class StepCounter {
 public:
  explicit StepCounter(std::size_t budget) : budget_(budget) {}
  void tick() {
    if (++steps_ > budget_) throw BudgetExceeded(budget_);
  }

 private:
  std::size_t budget_;
  std::size_t steps_ = 0;
};

// Full reduction of p by the entries selected in `active`. When `quotients`
// is non-null the multipliers are accumulated per entry.
Poly reduce_impl(const Poly& p, const std::vector<BasisEntry>& entries, const std::vector<std::size_t>& active,
                 const MonOrder& order, StepCounter* counter, std::vector<OrderedPoly>* quotients) {
  OrderedPoly work(p, order);
  OrderedPoly rem(order);
  while (!work.empty()) {
    const Monomial lead = work.lead_mono();
    const Rat coef = work.lead_coef();
    bool reduced = false;
    for (std::size_t k : active) {
      const auto& e = entries[k];
      if (!e.lead.divides(lead)) continue;
      const Monomial m = lead / e.lead;
      const Rat c = coef / e.lead_coef;
      work.sub_mul(c, m, e.poly);
      if (quotients) (*quotients)[k].add_term(m, c);
      if (counter) counter->tick();
      reduced = true;
      break;
    }
    if (!reduced) {
      rem.add_term(lead, coef);
      work.pop_lead();
    }
  }
  return rem.to_poly(p.vars_ptr());
}

Poly make_monic(const Poly& p, const MonOrder& order) {
  if (p.is_zero()) return p;
  Rat lc = leading_term(p, order).coef;
  return p * Rat(1 / lc);
}

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const MonOrder& order, const GroebnerOptions& options)
      : order_(order), options_(options), counter_(options.step_budget) {}

  std::vector<Poly> run(const std::vector<Poly>& generators) {
    for (const auto& g : generators) {
      if (g.is_zero()) continue;
      add(make_monic(g, order_));
    }
    while (!pairs_.empty()) {
      auto best = std::min_element(pairs_.begin(), pairs_.end(), [&](const Pair& a, const Pair& b) {
        if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
        const int c = order_.compare(a.lcm, b.lcm);
        if (c != 0) return c < 0;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
      });
      Pair pair = *best;
      pairs_.erase(best);
      const auto& a = entries_[pair.i];
      const auto& b = entries_[pair.j];
      if (a.lead.coprime(b.lead)) continue;
      Poly s = s_polynomial(a.poly, b.poly, order_);
      Poly h = reduce_impl(s, entries_, active_list(), order_, &counter_, nullptr);
      if (!h.is_zero()) add(make_monic(h, order_));
    }
    return interreduce();
  }

 private:
  std::vector<std::size_t> active_list() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < entries_.size(); ++k)
      if (active_[k]) out.push_back(k);
    return out;
  }

  void add(Poly p) {
    const std::size_t h = entries_.size();
    entries_.push_back(make_entry(std::move(p), order_));
    active_.push_back(true);
    if (options_.chain_criterion) {
      gebauer_moeller(h);
    } else {
      for (std::size_t g = 0; g < h; ++g)
        if (active_[g]) pairs_.push_back({g, h, lcm(entries_[g].lead, entries_[h].lead)});
    }
  }

  // Gebauer-Moeller update with the new element h.
  void gebauer_moeller(std::size_t h) {
    const Monomial& lh = entries_[h].lead;
    std::vector<std::size_t> candidates;
    for (std::size_t g = 0; g < h; ++g)
      if (active_[g]) candidates.push_back(g);
    std::vector<Pair> kept;
    for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
      const std::size_t g1 = candidates[idx];
      const Monomial l1 = lcm(lh, entries_[g1].lead);
      bool keep = lh.coprime(entries_[g1].lead);
      if (!keep) {
        keep = true;
        for (std::size_t j = idx + 1; j < candidates.size() && keep; ++j)
          if (lcm(lh, entries_[candidates[j]].lead).divides(l1)) keep = false;
        for (const auto& d : kept)
          if (keep && d.lcm.divides(l1)) keep = false;
      }
      if (keep) kept.push_back({g1, h, l1});
    }
    std::vector<Pair> new_pairs;
    for (auto& d : kept)
      if (!lh.coprime(entries_[d.i].lead)) new_pairs.push_back(d);
    std::vector<Pair> old;
    for (auto& p : pairs_) {
      const bool drop = lh.divides(p.lcm) && lcm(entries_[p.i].lead, lh) != p.lcm &&
                        lcm(lh, entries_[p.j].lead) != p.lcm;
      if (!drop) old.push_back(p);
    }
    pairs_ = std::move(old);
    pairs_.insert(pairs_.end(), new_pairs.begin(), new_pairs.end());
    for (std::size_t g = 0; g < h; ++g)
      if (active_[g] && lh.divides(entries_[g].lead)) active_[g] = false;
  }

  std::vector<Poly> interreduce() {
    std::vector<std::size_t> minimal;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
      if (!active_[k]) continue;
      bool redundant = false;
      for (std::size_t j = 0; j < entries_.size() && !redundant; ++j) {
        if (j == k || !active_[j]) continue;
        if (entries_[j].lead.divides(entries_[k].lead) && (entries_[j].lead != entries_[k].lead || j < k))
          redundant = true;
      }
      if (!redundant) minimal.push_back(k);
    }
    std::vector<Poly> out;
    for (std::size_t k : minimal) {
      std::vector<std::size_t> others;
      for (std::size_t j : minimal)
        if (j != k) others.push_back(j);
      // Leading terms of the others cannot divide the lead of k, so only the
      // tail is rewritten.
      Poly r = reduce_impl(entries_[k].poly, entries_, others, order_, &counter_, nullptr);
      out.push_back(make_monic(r, order_));
    }
    std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
      return order_.compare(leading_term(a, order_).mono, leading_term(b, order_).mono) < 0;
    });
    return out;
  }

  MonOrder order_;
  GroebnerOptions options_;
  StepCounter counter_;
  std::vector<BasisEntry> entries_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
};

std::string unique_aux_name(const VarList& vars) {
  std::string name = "_t";
  while (std::find(vars.begin(), vars.end(), name) != vars.end()) name += "_";
  return name;
}

Poly embed_front(const Poly& p, const VarsPtr& wider) {
  std::vector<Term> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back({t.mono.prepend_zeros(1), t.coef});
  return Poly(wider, std::move(terms));
}

}  // namespace

Term leading_term(const Poly& p, const MonOrder& order) {
  if (p.is_zero()) throw DomainError("zero_polynomial", "leading term of the zero polynomial");
  const Term* best = &p.terms()[0];
  for (const auto& t : p.terms())
    if (order.compare(t.mono, best->mono) > 0) best = &t;
  return *best;
}

Poly s_polynomial(const Poly& f, const Poly& g, const MonOrder& order) {
  const Term lf = leading_term(f, order);
  const Term lg = leading_term(g, order);
  const Monomial l = lcm(lf.mono, lg.mono);
  Poly a = f * Poly::monomial(f.vars_ptr(), l / lf.mono, Rat(1 / lf.coef));
  Poly b = g * Poly::monomial(g.vars_ptr(), l / lg.mono, Rat(1 / lg.coef));
  return a - b;
}

Ideal groebner(const Ideal& ideal, const MonOrder& order, const GroebnerOptions& options) {
  if (ideal.generators().empty()) throw DomainError("empty_ideal", "groebner: empty generator list");
  Buchberger engine(order, options);
  GroebnerBasis gb{order, engine.run(ideal.generators())};
  return ideal.with_basis(std::move(gb));
}

Poly reduce(const Poly& f, const std::vector<Poly>& basis, const MonOrder& order) {
  std::vector<BasisEntry> entries;
  std::vector<std::size_t> active;
  for (const auto& g : basis) {
    f.require_compatible(g, "reduce");
    if (g.is_zero()) continue;
    active.push_back(entries.size());
    entries.push_back(make_entry(g, order));
  }
  return reduce_impl(f, entries, active, order, nullptr, nullptr);
}

MembershipWitness normal_form(const Poly& f, const Ideal& ideal) {
  const GroebnerBasis& gb = ideal.basis();
  if (f.arity() != ideal.arity()) throw ArityMismatch(f.arity(), ideal.arity(), "normal_form");
  std::vector<BasisEntry> entries;
  std::vector<std::size_t> active;
  for (const auto& g : gb.basis) {
    active.push_back(entries.size());
    entries.push_back(make_entry(g, gb.order));
  }
  std::vector<OrderedPoly> quotients(entries.size(), OrderedPoly(gb.order));
  Poly rem = reduce_impl(f, entries, active, gb.order, nullptr, &quotients);
  MembershipWitness w{f, {}, rem};
  for (const auto& q : quotients) w.cofactors.push_back(q.to_poly(f.vars_ptr()));
  return w;
}

bool buchberger_criterion(const std::vector<Poly>& basis, const MonOrder& order) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!reduce(s_polynomial(basis[i], basis[j], order), basis, order).is_zero()) return false;
  return true;
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  if (*a.vars_ptr() != *b.vars_ptr()) throw DomainError("variable_mismatch", "ideal_product: ambient rings differ");
  std::vector<Poly> gens;
  const bool same = &a == &b || a.generators() == b.generators();
  for (std::size_t i = 0; i < a.generators().size(); ++i)
    for (std::size_t j = same ? i : 0; j < b.generators().size(); ++j)
      gens.push_back(a.generators()[i] * b.generators()[j]);
  return Ideal(a.vars_ptr(), std::move(gens));
}

Ideal ideal_power(const Ideal& a, unsigned exponent) {
  if (exponent == 0) return Ideal(a.vars_ptr(), {Poly::constant(a.vars_ptr(), Rat(1))});
  Ideal out = a;
  for (unsigned k = 1; k < exponent; ++k) out = ideal_product(out, a);
  return out;
}

Poly divide_exact(const Poly& p, const Poly& divisor) {
  if (divisor.is_zero()) throw DomainError("division_by_zero", "divide_exact by zero");
  const MonOrder order = MonOrder::grevlex();
  std::vector<BasisEntry> entries{make_entry(divisor, order)};
  std::vector<OrderedPoly> quotients(1, OrderedPoly(order));
  Poly rem = reduce_impl(p, entries, {0}, order, nullptr, &quotients);
  if (!rem.is_zero()) throw DomainError("not_divisible", "divide_exact: nonzero remainder");
  return quotients[0].to_poly(p.vars_ptr());
}

Ideal ideal_quotient(const Ideal& ideal, const Poly& f, const GroebnerOptions& options) {
  if (f.is_zero()) throw DomainError("zero_polynomial", "ideal_quotient by the zero polynomial");
  if (f.arity() != ideal.arity()) throw ArityMismatch(f.arity(), ideal.arity(), "ideal_quotient");
  VarList wide_names{unique_aux_name(*ideal.vars_ptr())};
  wide_names.insert(wide_names.end(), ideal.vars_ptr()->begin(), ideal.vars_ptr()->end());
  VarsPtr wide = make_vars(std::move(wide_names));
  const Poly t = Poly::variable(wide, std::size_t{0});
  const Poly one = Poly::constant(wide, Rat(1));
  std::vector<Poly> gens;
  for (const auto& g : ideal.generators()) gens.push_back(t * embed_front(g, wide));
  gens.push_back((one - t) * embed_front(f, wide));
  Ideal elim = groebner(Ideal(wide, gens), MonOrder::elimination(1), options);
  std::vector<Poly> quotient_gens;
  for (const auto& g : elim.basis().basis) {
    bool has_t = std::any_of(g.terms().begin(), g.terms().end(), [](const Term& term) { return term.mono[0] != 0; });
    if (has_t) continue;
    std::vector<Term> terms;
    for (const auto& term : g.terms()) terms.push_back({term.mono.drop_front(1), term.coef});
    quotient_gens.push_back(divide_exact(Poly(ideal.vars_ptr(), std::move(terms)), f));
  }
  if (quotient_gens.empty()) quotient_gens.push_back(Poly(ideal.vars_ptr()));
  return groebner(Ideal(ideal.vars_ptr(), quotient_gens), MonOrder::grevlex(), options);
}

LocalMembership member_localized(const Poly& f, const Ideal& ideal, std::span<const GaussRat> point,
                                 const GroebnerOptions& options) {
  if (f.is_zero()) throw DomainError("zero_polynomial", "member_localized: f = 0");
  if (point.size() != ideal.arity()) throw ArityMismatch(point.size(), ideal.arity(), "member_localized point");
  Ideal quotient = ideal_quotient(ideal, f, options);
  LocalMembership out{false, quotient, std::nullopt, {}};
  for (const auto& g : quotient.basis().basis) {
    GaussRat v = evaluate(g, point);
    if (!out.member && !v.is_zero()) {
      out.member = true;
      out.witness = g;
    }
    out.evaluations.push_back(std::move(v));
  }
  return out;
}

std::optional<OrderObstruction> local_order_bound(const Poly& f, const Ideal& ideal) {
  if (f.is_zero()) throw DomainError("zero_polynomial", "local_order_bound: f = 0");
  if (ideal.generators().empty()) throw DomainError("empty_ideal", "local_order_bound: no generators");
  std::uint64_t min_order = UINT64_MAX;
  for (const auto& g : ideal.generators()) {
    if (g.is_zero()) throw DomainError("zero_polynomial", "local_order_bound: zero generator");
    min_order = std::min(min_order, g.low_degree());
  }
  const std::uint64_t ord = f.low_degree();
  const std::uint64_t bound = 2 * min_order;
  if (ord < bound) return OrderObstruction{ord, bound};
  return std::nullopt;
}

std::size_t dimension(const Ideal& ideal) {
  const GroebnerBasis& gb = ideal.basis();
  std::vector<Monomial> leads;
  for (const auto& g : gb.basis) {
    const Term lt = leading_term(g, gb.order);
    if (lt.mono.is_one()) throw DomainError("unit_ideal", "dimension of the unit ideal");
    leads.push_back(lt.mono);
  }
  const std::size_t n = ideal.arity();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    const std::size_t size = static_cast<std::size_t>(__builtin_popcount(mask));
    if (size <= best) continue;
    // S is independent when no leading monomial uses only variables of S.
    bool independent = true;
    for (const auto& m : leads) {
      bool inside = true;
      for (std::size_t i = 0; i < n && inside; ++i)
        if (m[i] != 0 && !(mask & (1U << i))) inside = false;
      if (inside) {
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

std::size_t jacobian_rank_at(const std::vector<Poly>& gens, std::span<const GaussRat> point) {
  linalg::Matrix<GaussRat> jac;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const Poly& g = gens[k];
    if (g.arity() != point.size()) throw ArityMismatch(g.arity(), point.size(), "jacobian_rank_at");
    if (!evaluate(g, point).is_zero())
      throw DomainError("not_on_variety", "generator #" + std::to_string(k) + " (" + format(g) +
                                              ") does not vanish at the point");
    std::vector<GaussRat> row;
    for (std::size_t i = 0; i < g.arity(); ++i) row.push_back(evaluate(derivative(g, i), point));
    jac.push_back(std::move(row));
  }
  return linalg::rank(jac);
}

}  // namespace badpoints
