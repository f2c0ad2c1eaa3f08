#include "doctest.h"

#include <random>

#include "badpoints/cert_io.hpp"
#include "badpoints/certificates.hpp"
#include "badpoints/error.hpp"
#include "../support/random_poly.hpp"

using namespace badpoints;

namespace {

Poly P(const char* text, const VarsPtr& v) { return parse_poly(text, v); }

StructNonneg squares(std::vector<Poly> s) { return StructNonneg{Rat(1), std::move(s), {}}; }

std::vector<GaussRat> pt(std::initializer_list<const char*> coords) {
  std::vector<GaussRat> out;
  for (const char* c : coords) out.push_back(parse_gauss(c));
  return out;
}

const char* kMotzkin = "x^4*y^2 + x^2*y^4 + 1 - 3*x^2*y^2";
const char* kCxbad = "x^10 + x^2*y^6 + (z^2 + 1)^3 - 3*x^4*y^2*(z^2 + 1)";
const char* kMotzkin4 = "x^6 + w^2*y^2*z^4 + w^2*y^4*z^2 + (1 - w)*x^2*y^2*z^2";

}  // namespace

TEST_CASE("sos verification in the polynomial ring") {
  auto xy = make_vars({"x", "y"});
  SosCert ok{SosRing::polynomial, 0, P("x^2 + 2*x*y + y^2", xy), {{StructNonneg{}, P("x + y", xy)}}};
  CHECK(verify_sos(ok).ok);

  SosCert short_by_one{SosRing::polynomial, 0, P("x^2 + y^2 + 1", xy),
                       {{StructNonneg{}, P("x", xy)}, {StructNonneg{}, P("y", xy)}}};
  const Verdict v = verify_sos(short_by_one);
  CHECK_FALSE(v.ok);
  REQUIRE(v.residual);
  CHECK(format(*v.residual) == "1");

  SosCert negative_scale{SosRing::polynomial, 0, P("-x^2", xy), {{StructNonneg{Rat(-1), {}, {}}, P("x", xy)}}};
  CHECK_FALSE(verify_sos(negative_scale).ok);
  CHECK(verify_sos(negative_scale).reason.find("negative scalar") != std::string::npos);

  SosCert mismatch{SosRing::polynomial, 0, P("x^2", xy), {{StructNonneg{}, P("x", make_vars({"x"}))}}};
  CHECK_THROWS_AS(verify_sos(mismatch), ArityMismatch);
}

TEST_CASE("the hat-coordinate g identity is an exact sum of squares") {
  auto h = make_vars({"xh", "yh", "zh"});
  // phi^* f1 in hat coordinates, with w = -zh^2.
  const Poly f1 = P("xh^10 + xh^2*yh^24 - zh^6 + 3*xh^4*yh^8*zh^2", h);
  const Poly g = -P("yh^6", h) * f1 + P("(xh^6 + yh^8*zh^2)^2", h) + P("yh^4*(yh^16 + xh^2*zh^2)^2", h);
  const Poly display = P("(xh^2 - yh^6)^2*(xh^8 + xh^6*yh^6 + xh^4*yh^12 + xh^2*yh^18 + yh^24 + 2*xh^2*yh^8*zh^2)"
                         " + zh^2*yh^4*(xh^4 + yh^2*zh^2)*(yh^10 + zh^2)",
                         h);
  CHECK(g == display);

  const Poly d = P("xh^2 - yh^6", h);
  SosCert cert{SosRing::polynomial, 0, g, {}};
  for (const char* m : {"xh^4", "xh^3*yh^3", "xh^2*yh^6", "xh*yh^9", "yh^12"})
    cert.items.push_back({StructNonneg{}, P(m, h) * d});
  cert.items.push_back({StructNonneg{Rat(2), {}, {}}, P("xh*yh^4*zh", h) * d});
  for (const char* m : {"xh^2*yh^7*zh", "xh^2*yh^2*zh^2", "yh^8*zh^2", "yh^3*zh^3"})
    cert.items.push_back({StructNonneg{}, P(m, h)});
  CHECK(verify_sos(cert).ok);
}

TEST_CASE("truncated sos for the four-variable Motzkin form") {
  auto v = make_vars({"w", "x", "y", "z"});
  const std::uint64_t n = 16;
  const TruncSeries one_minus_w(P("1 - w", v), n);
  const Poly root = nth_root_unit(one_minus_w, 2).body();
  SosCert cert{SosRing::truncated, n, P(kMotzkin4, v),
               {{StructNonneg{}, P("x^3", v)},
                {StructNonneg{}, P("w*y*z^2", v)},
                {StructNonneg{}, P("w*y^2*z", v)},
                {StructNonneg{}, (root * P("x*y*z", v)).truncated(n)}}};
  CHECK(verify_sos(cert).ok);
  // The polynomial ring refuses the same items.
  cert.ring = SosRing::polynomial;
  CHECK_FALSE(verify_sos(cert).ok);
}

TEST_CASE("am-gm certificate for the cxbad polynomial") {
  auto v = make_vars({"x", "y", "z"});
  const Atom z2p1{P("z", v), Rat(1)};
  AmGmCert cert{{squares({P("x^5", v)}), squares({P("x*y^3", v)}), StructNonneg{Rat(1), {P("z^2 + 1", v)}, {z2p1}}},
                StructNonneg{Rat(1), {P("x^2*y", v)}, {z2p1}},
                P(kCxbad, v)};
  CHECK(verify_amgm(cert).ok);

  // Reconstruction identity asserted directly.
  Poly sum(v);
  for (const auto& t : cert.terms) sum += t.denote(v);
  CHECK(sum - cert.mean.denote(v) * Rat(3) == cert.target);

  AmGmCert wrong_target = cert;
  wrong_target.target += P("1", v);
  CHECK_FALSE(verify_amgm(wrong_target).ok);

  AmGmCert bad_atom = cert;
  bad_atom.mean.atoms[0].c = 0;
  CHECK(verify_amgm(bad_atom).reason.find("not positive") != std::string::npos);
}

TEST_CASE("am-gm edge cases") {
  auto ab = make_vars({"a", "b"});
  // a*b is not expressible as a structural factor; -a*b with a square is rejected.
  AmGmCert invalid{{squares({P("a", ab)}), squares({P("b", ab)})}, StructNonneg{Rat(-1), {P("a*b", ab)}, {}},
                   P("a^2 + b^2 + 2*a^2*b^2", ab)};
  CHECK_FALSE(verify_amgm(invalid).ok);

  auto x = make_vars({"x"});
  AmGmCert equality{{squares({P("x", x)}), squares({P("x", x)})}, squares({P("x", x)}), P("0", x)};
  CHECK(verify_amgm(equality).ok);

  AmGmCert single{{squares({P("x", x)})}, squares({P("x", x)}), P("0", x)};
  CHECK_FALSE(verify_amgm(single).ok);
}

TEST_CASE("newton obstructions") {
  auto yz = make_vars({"y", "z"});
  for (const char* w0 : {"3/2", "2", "5"}) {
    const Rat w = parse_rat(w0);
    // f(w0, 1, y, z) = 1 + w0^2 y^2 z^4 + w0^2 y^4 z^2 + (1 - w0) y^2 z^2, constant term 1.
    const Poly fw = P("1", yz) + P("y^2*z^4 + y^4*z^2", yz) * (w * w) + P("y^2*z^2", yz) * (Rat(1) - w);
    auto obs = find_non_sos_obstruction(fw);
    REQUIRE(obs);
    CHECK(obs->beta == Point{1, 1});
    CHECK(obs->coefficient == Rat(1) - w);
    CHECK(obs->pair_audit.size() == 1);
    CHECK(verify_non_sos(*obs).ok);
  }
  auto xy = make_vars({"x", "y"});
  auto m = find_non_sos_obstruction(P(kMotzkin, xy));
  REQUIRE(m);
  CHECK(m->beta == Point{1, 1});
  CHECK(m->coefficient == -3);
  CHECK(m->support.size() == 4);
  CHECK_FALSE(find_non_sos_obstruction(P("x^2 + y^2", xy)));
  CHECK_THROWS_AS(find_non_sos_obstruction(Poly(xy)), DomainError);

  // The cli example: w0 = 2 written out.
  auto spec2 = find_non_sos_obstruction(P("1+4*y^2*z^4+4*y^4*z^2-y^2*z^2", yz));
  REQUIRE(spec2);
  CHECK(spec2->coefficient == -1);
}

TEST_CASE("tampered obstructions are rejected") {
  auto xy = make_vars({"x", "y"});
  auto obs = *find_non_sos_obstruction(P(kMotzkin, xy));
  auto t1 = obs;
  t1.coefficient = -2;
  CHECK_FALSE(verify_non_sos(t1).ok);
  auto t2 = obs;
  t2.pair_audit.clear();
  CHECK_FALSE(verify_non_sos(t2).ok);
  auto t3 = obs;
  t3.support.points.erase(Point{0, 0});
  CHECK_FALSE(verify_non_sos(t3).ok);
  auto t4 = obs;
  t4.poly = P("x^4*y^2 + x^2*y^4 + 1 + 3*x^2*y^2", xy);
  CHECK_FALSE(verify_non_sos(t4).ok);
}

TEST_CASE("mutual exclusion on the Motzkin family") {
  // Random attempted certificates: roots supported on the half support.
  struct Case {
    const char* poly;
    std::vector<const char*> vars;
  };
  const std::vector<Case> cases = {{kMotzkin, {"x", "y"}},
                                   {"1+9/4*y^2*z^4+9/4*y^4*z^2-1/2*y^2*z^2", {"y", "z"}},
                                   {"1+4*y^2*z^4+4*y^4*z^2-y^2*z^2", {"y", "z"}},
                                   {"1+25*y^2*z^4+25*y^4*z^2-4*y^2*z^2", {"y", "z"}}};
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> coef(-3, 3);
  for (const auto& c : cases) {
    auto vars = make_vars(VarList(c.vars.begin(), c.vars.end()));
    const Poly p = P(c.poly, vars);
    auto obs = find_non_sos_obstruction(p);
    REQUIRE(obs);
    CHECK(verify_non_sos(*obs).ok);
    const ExponentSet half = newton_half_support(p);
    // The natural monomial-square attempt.
    SosCert natural{SosRing::polynomial, 0, p, {}};
    for (const auto& t : p.terms())
      if (sgn(t.coef) > 0) {
        Point b = to_point(t.mono);
        for (auto& e : b) e /= 2;
        natural.items.push_back({StructNonneg{t.coef, {}, {}}, Poly::monomial(vars, to_monomial(b))});
      }
    CHECK_FALSE(verify_sos(natural).ok);
    for (int trial = 0; trial < 50; ++trial) {
      SosCert cert{SosRing::polynomial, 0, p, {}};
      for (int k = 0; k < 3; ++k) {
        Poly root(vars);
        for (const auto& b : half.points) root += Poly::monomial(vars, to_monomial(b), Rat(coef(rng)));
        cert.items.push_back({StructNonneg{}, root});
      }
      CHECK_FALSE(verify_sos(cert).ok);
    }
  }
}

TEST_CASE("verified sums of squares survive sampling") {
  auto v = make_vars({"x", "y"});
  testing::PolyGen gen(v, 11);
  GridBox box{{{Rat(-2), Rat(2)}, {Rat(-2), Rat(2)}}, make_rat(1, 2)};
  for (int trial = 0; trial < 30; ++trial) {
    SosCert cert{SosRing::polynomial, 0, Poly(v), {}};
    for (int k = 0; k < 3; ++k) {
      StructNonneg scale{abs(gen.coefficient()), {gen.poly(2, 2)}, {{gen.poly(2, 2), abs(gen.coefficient())}}};
      const Poly root = gen.poly(3, 3);
      cert.target += scale.denote(v) * root * root;
      cert.items.push_back({scale, root});
    }
    REQUIRE(verify_sos(cert).ok);
    CHECK_FALSE(sample_nonnegativity(cert.target, box).counterexample);
  }
}

TEST_CASE("cone obstructions") {
  auto xy = make_vars({"x", "y"});
  const std::uint64_t n = 6;
  std::vector<TruncSeries> gens = {TruncSeries(P("x^2", xy), n), TruncSeries(P("y^2", xy), n)};
  const Monomial xym{1, 1};
  auto cert = make_cone_obstruction(gens, xym);
  auto rep = verify_cone_obstruction(cert, gens, TruncSeries(P("x*y", xy), n));
  CHECK(rep.verdict.ok);
  CHECK(rep.stored_supports_match);

  auto x = make_vars({"x"});
  std::vector<TruncSeries> gx = {TruncSeries(P("x", x), n)};
  auto cx = make_cone_obstruction(gx, Monomial{2});
  CHECK_FALSE(verify_cone_obstruction(cx, gx, TruncSeries(P("x^2", x), n)).verdict.ok);

  // Zero target coefficient.
  CHECK_FALSE(verify_cone_obstruction(cert, gens, TruncSeries(P("x^3", xy), n)).verdict.ok);
  // Generators known to too low an order.
  std::vector<TruncSeries> low = {TruncSeries(P("x^2", xy), 1)};
  CHECK_THROWS_AS(make_cone_obstruction(low, xym), DomainError);
}

TEST_CASE("tampering with stored cone supports never changes the verdict") {
  auto v = make_vars({"x", "y", "z"});
  testing::PolyGen gen(v, 5);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t n = 8;
    std::vector<TruncSeries> gens;
    for (int k = 0; k < 2; ++k) gens.push_back(TruncSeries((gen.poly(3, 4) * P("x", v)).truncated(n), n));
    const TruncSeries f((gen.poly(4, 4) + P("y^2*z", v)).truncated(n), n);
    const Monomial target = gen.monomial(4);
    auto honest = make_cone_obstruction(gens, target);
    const auto expected = verify_cone_obstruction(honest, gens, f).verdict.ok;
    auto tampered = honest;
    if (!tampered.products.empty()) {
      auto& sup = tampered.products[rng() % tampered.products.size()].support;
      if (!sup.empty() && rng() % 2) sup.erase(sup.begin());
      sup.push_back(gen.monomial(4));
    }
    tampered.products.push_back({0, 0, {Monomial(3)}});
    const auto r = verify_cone_obstruction(tampered, gens, f);
    CHECK(r.verdict.ok == expected);
    CHECK_FALSE(r.stored_supports_match);
  }
}

TEST_CASE("the hat-coordinate cone obstruction") {
  const std::uint64_t n = 16;
  auto h = make_vars({"xh", "yh", "zh"});
  std::vector<TruncSeries> gens;
  for (const char* g : {"xh^6 + yh^8*zh^2", "yh^16 + xh^2*zh^2", "zh^4 - xh^4*yh^8"})
    gens.push_back(TruncSeries(P(g, h).truncated(n), n));
  auto xyz = make_vars({"x", "y", "z"});
  // y^6 phi^* f1 developed in hat coordinates.
  const Poly f1 = P("u^5 + u*v^3 + w^3 - 3*u^2*v*w", make_vars({"u", "v", "w"}));
  const std::vector<Poly> phi = {P("x^2", xyz), P("y^8 - y^10 + y^11", xyz), P("-z^2 + 2*z^3", xyz)};
  const TruncSeries f = hat_change(P("y^6", xyz) * substitute(f1, phi), n);
  const Monomial target{0, 6, 6};
  CHECK(f.coeff(target) == -1);
  auto cert = make_cone_obstruction(gens, target);
  CHECK(verify_cone_obstruction(cert, gens, TruncSeries(f.body().with_vars(h), n)).verdict.ok);
  // The g1 g3 product carries zh^4 xh^6 at low degree.
  const auto& p13 = cert.products[2];
  CHECK(p13.i == 0);
  CHECK(p13.j == 2);
  CHECK(std::find(p13.support.begin(), p13.support.end(), Monomial{6, 0, 4}) != p13.support.end());
}

TEST_CASE("grid sampling") {
  auto x = make_vars({"x"});
  GridBox box{{{Rat(-1), Rat(1)}}, make_rat(1, 2)};
  auto r = sample_nonnegativity(P("-x^2", x), box);
  REQUIRE(r.counterexample);
  CHECK(r.point == std::vector<Rat>{make_rat(1, 2)});
  CHECK(r.value == make_rat(-1, 4));
  CHECK(r.evaluated == 2);
  auto zero = sample_nonnegativity(Poly(x), box);
  CHECK_FALSE(zero.counterexample);
  CHECK(zero.evaluated == 5);
  CHECK_THROWS_AS(sample_nonnegativity(P("x", x), GridBox{{{Rat(1), Rat(0)}}, Rat(1)}), DomainError);
  CHECK_THROWS_AS(sample_nonnegativity(P("x", x), GridBox{{{Rat(0), Rat(1)}}, Rat(0)}), DomainError);

  auto v = make_vars({"w", "x", "y", "z"});
  GridBox small{{{Rat(-2), Rat(2)}, {Rat(-2), Rat(2)}, {Rat(-2), Rat(2)}, {Rat(-2), Rat(2)}}, Rat(1)};
  auto m = sample_nonnegativity(P(kMotzkin4, v), small);
  CHECK_FALSE(m.counterexample);
  CHECK(m.evaluated == 625);
}

TEST_CASE("birational maps avoiding points") {
  auto v4 = make_vars({"a", "b", "c", "d"});
  auto m = birational_avoid(v4, {pt({"1", "0", "0", "1"})}, {pt({"0", "0", "0", "0"})});
  REQUIRE(m.steps.size() == 1);
  CHECK(format(m.steps[0].p) == "t - 1");
  CHECK(format(m.map[3]) == "a*d - d");
  CHECK(verify_birational_avoid(m, {pt({"1", "0", "0", "1"})}, {pt({"0", "0", "0", "0"})}).ok);

  auto v3 = make_vars({"x", "y", "z"});
  auto g = birational_avoid(v3, {pt({"i", "0", "1"})}, {pt({"1", "1", "1"})});
  CHECK(format(g.steps[0].p) == "t^2 + 1");
  CHECK(verify_birational_avoid(g, {pt({"i", "0", "1"})}, {pt({"1", "1", "1"})}).ok);

  const std::vector<std::vector<GaussRat>> avoid = {pt({"1", "0", "1"}), pt({"2", "0", "1"})};
  const std::vector<std::vector<GaussRat>> keep = {pt({"0", "0", "0"})};
  auto two = birational_avoid(v3, avoid, keep);
  CHECK(two.steps.size() == 2);
  CHECK(verify_birational_avoid(two, avoid, keep).ok);
  // No kept point maps onto an avoided one: the composite at each avoided
  // point's would-be preimage is never the avoided point itself.
  auto broken = two;
  broken.keep_preimages[0][0] += GaussRat(Rat(1));
  CHECK_FALSE(verify_birational_avoid(broken, avoid, keep).ok);

  CHECK_THROWS_AS(birational_avoid(make_vars({"x"}), {pt({"1"})}, {}), DomainError);
  CHECK_THROWS_AS(birational_avoid(v3, {pt({"1", "0", "1"})}, {pt({"1", "0", "1"})}), DomainError);
}

TEST_CASE("random birational avoidance verifies") {
  auto v = make_vars({"x", "y", "z"});
  std::mt19937 rng(17);
  std::uniform_int_distribution<long> c(-2, 2);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::vector<GaussRat>> pts;
    while (pts.size() < 4) {
      std::vector<GaussRat> p;
      for (int k = 0; k < 3; ++k) p.push_back(GaussRat(Rat(c(rng)), Rat(k == 0 && trial % 3 == 0 ? c(rng) : 0)));
      if (std::find(pts.begin(), pts.end(), p) == pts.end() &&
          !std::all_of(p.begin(), p.end(), [](const GaussRat& z) { return z.is_zero(); }))
        pts.push_back(p);
    }
    std::vector<std::vector<GaussRat>> avoid(pts.begin(), pts.begin() + 2), keep(pts.begin() + 2, pts.end());
    try {
      auto m = birational_avoid(v, avoid, keep);
      CHECK(verify_birational_avoid(m, avoid, keep).ok);
      for (std::size_t k = 0; k < keep.size(); ++k) {
        std::vector<GaussRat> image;
        for (const auto& comp : m.map) image.push_back(evaluate(comp, m.keep_preimages[k]));
        CHECK(image == keep[k]);
      }
    } catch (const DomainError& e) {
      // The bounded search may legitimately run out; it must say so.
      CHECK(e.kind() == "no_linear_change");
    }
  }
}

TEST_CASE("bad-point reports") {
  auto xyz = make_vars({"x", "y", "z"});
  BadPointCert cx{xyz,
                  {P("x^6 - y^2*(z^2 + 1)", xyz), P("y^4 - x^2*(z^2 + 1)", xyz), P("(z^2 + 1)^2 - x^4*y^2", xyz)},
                  P(kCxbad, xyz),
                  pt({"0", "0", "i"}),
                  NonMembershipMethod::localized,
                  0,
                  Monomial(3),
                  {{pt({"1", "1", "0"}), 2}}};
  auto rep = verify_bad_point(cx);
  for (const auto& c : rep.checks) INFO(c.name << ": " << c.detail);
  CHECK(rep.all_passed);
  CHECK(rep.checks.size() == 4);

  auto broken = cx;
  broken.f += P("1", xyz);
  auto br = verify_bad_point(broken);
  CHECK_FALSE(br.all_passed);
  CHECK(br.checks[0].name == "membership");
  CHECK_FALSE(br.checks[0].passed);
  CHECK(br.conclusion.find("no conclusion") != std::string::npos);

  auto no_density = cx;
  no_density.density.clear();
  CHECK_FALSE(verify_bad_point(no_density).all_passed);
  auto complex_density = cx;
  complex_density.density = {{pt({"0", "0", "i"}), 2}};
  CHECK_FALSE(verify_bad_point(complex_density).all_passed);

  auto uvw = make_vars({"u", "v", "w"});
  BadPointCert symb{uvw,
                    {P("u^3 - v*w", uvw), P("v^2 - u*w", uvw), P("w^2 - u^2*v", uvw)},
                    P("u^5 + u*v^3 + w^3 - 3*u^2*v*w", uvw),
                    pt({"0", "0", "0"}),
                    NonMembershipMethod::order_bound,
                    0,
                    Monomial(3),
                    {{pt({"1", "1", "1"}), 2}}};
  auto sr = verify_bad_point(symb);
  for (const auto& c : sr.checks) INFO(c.name << ": " << c.detail);
  CHECK(sr.all_passed);
  CHECK(sr.checks[2].detail == "ord(f) = 3 < 4");
}

TEST_CASE("certificate documents round trip and validate") {
  auto v = make_vars({"x", "y", "z"});
  const Atom z2p1{P("z", v), Rat(1)};
  AnyCert amgm = AmGmCert{{squares({P("x^5", v)}), squares({P("x*y^3", v)}), StructNonneg{Rat(1), {P("z^2 + 1", v)}, {z2p1}}},
                          StructNonneg{Rat(1), {P("x^2*y", v)}, {z2p1}},
                          P(kCxbad, v)};
  const std::string text = write_certificate(amgm);
  const AnyCert back = parse_certificate(text);
  CHECK(certificate_kind(back) == "amgm");
  CHECK(write_certificate(back) == text);
  CHECK(verify_certificate(back).ok);

  auto xy = make_vars({"x", "y"});
  AnyCert obs = *find_non_sos_obstruction(P(kMotzkin, xy));
  CHECK(write_certificate(parse_certificate(write_certificate(obs))) == write_certificate(obs));
  CHECK(verify_certificate(parse_certificate(write_certificate(obs))).ok);

  auto schema_kind = [](const std::string& doc) {
    try {
      parse_certificate(doc);
    } catch (const Error& e) {
      return e.kind() + " " + e.what();
    }
    return std::string("accepted");
  };
  CHECK(schema_kind("[1]").rfind("schema_error", 0) == 0);
  CHECK(schema_kind("{\"kind\":\"magic\",\"vars\":[\"x\"]}").find("/kind") != std::string::npos);
  CHECK(schema_kind("{\"kind\":\"sos\",\"vars\":[\"x\"],\"ring\":\"polynomial\",\"target\":\"x^2\","
                    "\"items\":[{\"root\":3}]}")
            .find("/items/0/root: expected string") != std::string::npos);
  CHECK(schema_kind("{\"kind\":\"sos\",\"vars\":[\"x\",\"x\"],\"ring\":\"polynomial\",\"target\":\"x\",\"items\":[]}")
            .find("duplicate") != std::string::npos);
  CHECK(schema_kind("{\"kind\":\"sos\",\"vars\":[\"x\"],\"ring\":\"polynomial\",\"target\":\"x^\",\"items\":[]}")
            .rfind("parse_error", 0) == 0);
  CHECK(schema_kind("{\"kind\":\"sos\",\"vars\":[\"x\"],\"ring\":\"polynomial\",\"target\":\"x\",\"items\":[],\"extra\":1}")
            .find("unknown field") != std::string::npos);
  CHECK(schema_kind("not json").rfind("parse_error", 0) == 0);
}

TEST_CASE("cone documents with a hat change") {
  const std::string doc = R"doc({
 "kind": "cone", "vars": ["xh", "yh", "zh"], "change": "hat", "source_vars": ["x", "y", "z"], "trunc": 14,
 "gens": ["x^6 + (y^8 - y^10 + y^11)*(z^2 - 2*z^3)", "(y^8 - y^10 + y^11)^2 - x^2*(-z^2 + 2*z^3)",
          "(-z^2 + 2*z^3)^2 - x^4*(y^8 - y^10 + y^11)"],
 "f": "-y^6*(x^10 + x^2*(y^8 - y^10 + y^11)^3 + (-z^2 + 2*z^3)^3 - 3*x^4*(y^8 - y^10 + y^11)*(-z^2 + 2*z^3))",
 "target": [0, 6, 6]
})doc";
  const AnyCert c = parse_certificate(doc);
  const CertOutcome out = verify_certificate(c);
  CHECK(out.ok);
  CHECK(out.lines[0] == "target yh^6*zh^6 coefficient 1");
}
