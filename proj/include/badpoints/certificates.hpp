#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "badpoints/groebner.hpp"
#include "badpoints/newton.hpp"
#include "badpoints/poly.hpp"
#include "badpoints/series.hpp"

namespace badpoints {

// g^2 + c with c > 0.
struct Atom {
  Poly g;
  Rat c;
};

// scalar * prod squares_i^2 * prod (g_j^2 + c_j). Nonnegative at every real
// point by shape alone.
struct StructNonneg {
  Rat scalar = 1;
  std::vector<Poly> squares;
  std::vector<Atom> atoms;

  // Reason the factor is not structurally nonnegative, if any.
  std::optional<std::string> violation() const;
  Poly denote(const VarsPtr& vars) const;
};

struct Verdict {
  bool ok = false;
  std::string reason;
  std::optional<Poly> residual;
};

enum class SosRing { polynomial, truncated };

struct SosItem {
  StructNonneg scale;
  Poly root;
};

struct SosCert {
  SosRing ring = SosRing::polynomial;
  std::uint64_t trunc = 0;  // truncated ring only
  Poly target;
  std::vector<SosItem> items;
};

// Polynomial ring: target == sum scale * root^2. Truncated ring: the
// difference has no term of degree <= trunc.
Verdict verify_sos(const SosCert& cert);

struct AmGmCert {
  std::vector<StructNonneg> terms;
  StructNonneg mean;
  Poly target;
};

// mean^n == prod terms and target == sum terms - n * mean.
Verdict verify_amgm(const AmGmCert& cert);

struct NonSosObstruction {
  Poly poly;
  ExponentSet support;
  Point beta;
  Monomial corner;  // 2 * beta
  Rat coefficient;
  // Every (b1, b2) in support x support with b1 + b2 = 2 beta.
  std::vector<std::pair<Point, Point>> pair_audit;
};

// Scans the half support for a lattice point whose double has a negative
// coefficient and is reached only as beta + beta.
std::optional<NonSosObstruction> find_non_sos_obstruction(const Poly& p);
// Recomputes support, coefficient and pair audit from the polynomial.
Verdict verify_non_sos(const NonSosObstruction& obs);

struct ProductSupport {
  std::size_t i;
  std::size_t j;
  std::vector<Monomial> support;
};

struct ConeObstruction {
  std::vector<ProductSupport> products;
  Monomial target;
};

struct ConeReport {
  Verdict verdict;
  Rat target_coefficient;
  // Recomputed supports, and whether the stored ones agreed.
  std::vector<ProductSupport> products;
  bool stored_supports_match = false;
};

// Builds the certificate by expanding all pairwise products of gens.
ConeObstruction make_cone_obstruction(const std::vector<TruncSeries>& gens, const Monomial& target);
ConeReport verify_cone_obstruction(const ConeObstruction& cert, const std::vector<TruncSeries>& gens,
                                   const TruncSeries& f);

struct GridBox {
  std::vector<std::pair<Rat, Rat>> bounds;
  Rat step;
};

struct SampleResult {
  bool counterexample = false;
  std::vector<Rat> point;
  Rat value;
  std::uint64_t evaluated = 0;
};

// Exact evaluation on the grid. Each axis is visited by increasing |v| with
// v before -v; the last variable varies fastest. Stops at the first negative
// value.
SampleResult sample_nonnegativity(const Poly& p, const GridBox& box);

// One stage: y = A x, then (y_1, ..., y_{n-1}, P(y_1) y_n), then A^-1.
struct AvoidStep {
  std::vector<std::vector<Rat>> matrix;  // A, integer entries
  Poly p;                                // in the variable t
  std::vector<GaussRat> avoided;         // the avoided point in y coordinates
};

struct BirationalAvoid {
  VarsPtr vars;
  std::vector<AvoidStep> steps;
  // Composite map, applied as steps[0] after steps[1] after ...
  std::vector<Poly> map;
  // Preimages of the kept points under the composite map.
  std::vector<std::vector<GaussRat>> keep_preimages;
};

BirationalAvoid birational_avoid(VarsPtr vars, const std::vector<std::vector<GaussRat>>& avoid,
                                 const std::vector<std::vector<GaussRat>>& keep);
Verdict verify_birational_avoid(const BirationalAvoid& m, const std::vector<std::vector<GaussRat>>& avoid,
                                const std::vector<std::vector<GaussRat>>& keep);

// Minimal polynomial over Q of a Gaussian rational, in the variable of `t`.
Poly minimal_polynomial(const GaussRat& a, const VarsPtr& t);

enum class NonMembershipMethod { localized, order_bound, cone };

struct DensityWitness {
  std::vector<GaussRat> point;
  std::size_t expected_rank;
};

struct BadPointCert {
  VarsPtr vars;
  std::vector<Poly> ideal;
  Poly f;
  std::vector<GaussRat> point;
  NonMembershipMethod method = NonMembershipMethod::localized;
  // Cone method: develop in hat coordinates through `trunc` and look at `cone_target`.
  std::uint64_t trunc = 0;
  Monomial cone_target;
  std::vector<DensityWitness> density;
};

struct HypothesisCheck {
  std::string name;
  bool passed;
  std::string detail;
};

struct BadPointReport {
  std::vector<HypothesisCheck> checks;
  bool all_passed = false;
  std::string conclusion;
};

BadPointReport verify_bad_point(const BadPointCert& cert, const GroebnerOptions& options = default_groebner_options());

}  // namespace badpoints
