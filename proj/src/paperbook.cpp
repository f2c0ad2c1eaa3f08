#include "badpoints/paperbook.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "badpoints/error.hpp"
#include "badpoints/newton.hpp"

namespace badpoints {

using json = nlohmann::json;

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t v) {
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << v;
  return s.str();
}

json parse_json_file(const std::filesystem::path& p, const char* kind) {
  try {
    return json::parse(read_file(p));
  } catch (const json::parse_error& e) {
    throw Error(kind, p.filename().string() + ": " + e.what());
  }
}

Object load_object(const std::filesystem::path& file, const std::string& text) {
  const std::string ext = file.extension().string();
  try {
    if (ext == ".poly") return parse_poly_file(text).poly;
    if (ext == ".ideal") return parse_ideal_file(text);
    if (ext == ".map") return parse_map_file(text);
    if (ext == ".series") return parse_series_file(text);
  } catch (const ParseError& e) {
    throw Error("parse_error", file.filename().string() + ": " + e.what());
  }
  throw Error("catalog_error", "unknown object file type '" + ext + "'");
}

template <class T>
const T& get_as(const std::map<std::string, Object>& objects, const std::string& id, const char* what) {
  auto it = objects.find(id);
  if (it == objects.end()) throw Error("unknown_object", "no cataloged object '" + id + "'");
  if (auto* p = std::get_if<T>(&it->second)) return *p;
  throw Error("catalog_error", "object '" + id + "' is not " + what);
}

}  // namespace

Catalog Catalog::load(const std::filesystem::path& data_dir) {
  Catalog c;
  c.dir_ = data_dir;
  const json doc = parse_json_file(data_dir / "catalog.json", "catalog_error");
  for (const auto& e : doc.at("objects")) {
    const std::string id = e.at("id").get<std::string>();
    const std::filesystem::path file = data_dir / e.at("file").get<std::string>();
    const std::string text = read_file(file);
    const std::string got = hex64(fnv1a64(text));
    const std::string want = e.at("fnv1a").get<std::string>();
    if (got != want)
      throw Error("hash_mismatch", e.at("file").get<std::string>() + ": expected " + want + ", got " + got);
    if (!c.objects_.emplace(id, load_object(file, text)).second)
      throw Error("catalog_error", "duplicate object id '" + id + "'");
  }
  const json derived = parse_json_file(data_dir / "derived.json", "catalog_error");
  for (const auto& [k, v] : derived.items()) c.derived_.emplace(k, v.dump());
  return c;
}

std::vector<std::string> Catalog::ids() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : objects_) out.push_back(k);
  return out;
}

const Poly& Catalog::poly(const std::string& id) const { return get_as<Poly>(objects_, id, "a polynomial"); }
const IdealFile& Catalog::ideal(const std::string& id) const { return get_as<IdealFile>(objects_, id, "an ideal"); }
const PolyMap& Catalog::map(const std::string& id) const { return get_as<PolyMap>(objects_, id, "a map"); }
const TruncSeries& Catalog::series(const std::string& id) const {
  return get_as<TruncSeries>(objects_, id, "a series");
}

Poly Catalog::expr(std::string_view text, const VarsPtr& vars) const {
  std::string out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto open = text.find('{', pos);
    if (open == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    const auto close = text.find('}', open);
    if (close == std::string_view::npos) throw Error("parse_error", "unclosed '{' in expression");
    out.append(text.substr(pos, open - pos));
    const std::string ref(text.substr(open + 1, close - open - 1));
    const auto bar = ref.find('|');
    Poly p = poly(ref.substr(0, bar));
    if (bar != std::string::npos) p = map(ref.substr(bar + 1)).pull_back(p);
    out += "(" + format(p) + ")";
    pos = close + 1;
  }
  return parse_poly(out, vars);
}

std::string Catalog::derived(const std::string& key) const {
  auto it = derived_.find(key);
  if (it == derived_.end()) throw Error("unknown_object", "no derived value '" + key + "'");
  return it->second;
}

std::filesystem::path resolve_data_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* env = std::getenv("BADPOINTS_DATA"); env && *env) return env;
  return BADPOINTS_DEFAULT_DATA_DIR;
}

std::vector<ClaimSpec> load_claims(const std::filesystem::path& data_dir) {
  const json doc = parse_json_file(data_dir / "claims.json", "manifest_error");
  std::vector<ClaimSpec> out;
  std::set<std::string> seen;
  for (const auto& e : doc.at("claims")) {
    for (const char* key : {"id", "about", "op"})
      if (!e.contains(key) || !e[key].is_string())
        throw Error("manifest_error", "claim entry without string '" + std::string(key) + "'");
    ClaimSpec c{e["id"], e["about"], e["op"], e.dump()};
    if (!seen.insert(c.id).second) throw Error("manifest_error", "duplicate claim id '" + c.id + "'");
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// ---- helpers shared by the claim operations ----

std::string shorten(const std::string& s, std::size_t limit = 160) {
  if (s.size() <= limit) return s;
  return s.substr(0, limit - 3) + "...";
}

struct Run {
  const Catalog& cat;
  const json& a;
  std::vector<std::string>& details;
  bool ok = true;

  void check(bool cond, const std::string& what) {
    details.push_back(std::string(cond ? "ok   " : "FAIL ") + what);
    ok = ok && cond;
  }
  void note(const std::string& what) { details.push_back("     " + what); }

  const json& arg(const char* key) const {
    if (!a.contains(key)) throw Error("manifest_error", "claim needs '" + std::string(key) + "'");
    return a.at(key);
  }
  std::string str(const char* key) const { return arg(key).get<std::string>(); }

  // "derived:<key>" pulls a frozen oracle value; anything else is literal.
  json value(const json& v) const {
    if (v.is_string()) {
      const std::string s = v.get<std::string>();
      if (s.rfind("derived:", 0) == 0) return json::parse(cat.derived(s.substr(8)));
    }
    return v;
  }
  json value(const char* key) const { return value(arg(key)); }

  VarsPtr vars(const char* key = "vars") const { return make_vars(arg(key).get<std::vector<std::string>>()); }
  Poly poly(const json& text, const VarsPtr& v) const { return cat.expr(text.get<std::string>(), v); }
};

std::vector<GaussRat> gauss_point(const json& j) {
  std::vector<GaussRat> out;
  for (const auto& s : j) out.push_back(parse_gauss(s.get<std::string>()));
  return out;
}

std::string point_text(std::span<const GaussRat> p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + to_string(p[k]);
  return s + ")";
}

std::string point_text(std::span<const Rat> p) {
  std::vector<GaussRat> g(p.begin(), p.end());
  return point_text(g);
}

Monomial mono_of(const json& j) { return to_monomial(j.get<std::vector<std::int64_t>>()); }

Ideal powered(const IdealFile& f, unsigned power) {
  Ideal base = f.ideal();
  return power <= 1 ? base : ideal_power(base, power);
}

std::vector<std::string> formatted(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(format(p));
  return out;
}

// Poly in `vars` from a poly whose variable names are a subset of them.
Poly embed(const Poly& p, const VarsPtr& vars) {
  std::vector<Poly> images;
  for (const auto& n : p.vars()) images.push_back(Poly::variable(vars, n));
  return substitute(p, images);
}

// Drops the variables fixed to rational values.
Poly specialize(const Poly& p, const std::map<std::string, Rat>& fix) {
  VarList rest;
  for (const auto& n : p.vars())
    if (!fix.count(n)) rest.push_back(n);
  const VarsPtr rv = make_vars(rest);
  std::vector<Poly> images;
  for (const auto& n : p.vars()) {
    auto it = fix.find(n);
    images.push_back(it == fix.end() ? Poly::variable(rv, n) : Poly::constant(rv, it->second));
  }
  return substitute(p, images);
}

Poly lowest_part(const Poly& p) { return p.is_zero() ? p : p.homogeneous_part(p.low_degree()); }

// ---- hat-coordinate pieces used by several claims and certificates ----

struct HatPieces {
  VarsPtr hv;
  std::uint64_t trunc;
  Poly P, A, B, C;  // phi^* f1 and the three generators, in hat coordinates
  Poly y;           // y as a series in yh, accurate through trunc + 8
  Poly alpha;       // (y^6 - yh^6) / yh^8 through trunc
};

Poly pow_truncated(const Poly& p, unsigned e, std::uint64_t n) {
  Poly out = Poly::constant(p.vars_ptr(), Rat(1));
  for (unsigned k = 0; k < e; ++k) out = mul_truncated(out, p, n);
  return out;
}

HatPieces hat_pieces(const Catalog& cat, std::uint64_t n) {
  const IdealFile& ih = cat.ideal("I_D_hat");
  const VarsPtr hv = ih.vars;
  const HatCoordinates hc = hat_coordinates(n + 8);
  const Poly y = embed(hc.y_of.body(), hv);
  const Poly yh = Poly::variable(hv, "yh");
  const TruncSeries diff(pow_truncated(y, 6, n + 8) - yh.pow(6), n + 8);
  const Poly alpha = divide_by_monomial(diff, Monomial{0, 8, 0}).body();
  return {hv, n, embed(cat.poly("phi_f1_hat"), hv), ih.gens.at(0), ih.gens.at(1), ih.gens.at(2), y, alpha};
}

// g'' = (yh^6 - y^6) P + A^2 + C^2 through trunc.
Poly gsecond(const HatPieces& h) {
  const Poly yh = Poly::variable(h.hv, "yh");
  const Poly d = yh.pow(6) - pow_truncated(h.y, 6, h.trunc);
  return (mul_truncated(d, h.P, h.trunc) + h.A.pow(2) + h.C.pow(2)).truncated(h.trunc);
}

// ---- claim operations ----

void op_identity(Run& r) {
  const VarsPtr v = r.vars();
  const Poly d = r.poly(r.arg("lhs"), v) - r.poly(r.arg("rhs"), v);
  r.check(d.is_zero(), "lhs - rhs = " + shorten(format(d)));
}

void op_pullback_ideal(Run& r) {
  const PolyMap& m = r.cat.map(r.str("map"));
  const IdealFile& src = r.cat.ideal(r.str("source"));
  const IdealFile& dst = r.cat.ideal(r.str("target"));
  r.check(src.gens.size() == dst.gens.size(), "generator counts " + std::to_string(src.gens.size()) + " and " +
                                                  std::to_string(dst.gens.size()));
  for (std::size_t k = 0; k < std::min(src.gens.size(), dst.gens.size()); ++k) {
    const Poly d = m.pull_back(src.gens[k]) - embed(dst.gens[k], m.source);
    r.check(d.is_zero(), "generator " + std::to_string(k + 1) + ": pull-back minus stored = " + shorten(format(d)));
  }
}

void op_member(Run& r) {
  const IdealFile& f = r.cat.ideal(r.str("ideal"));
  const unsigned power = r.a.value("power", 1u);
  const Ideal gb = groebner(powered(f, power), MonOrder::grevlex());
  const Poly p = r.poly(r.arg("poly"), f.vars);
  r.check(buchberger_criterion(gb.basis().basis, gb.basis().order),
          "basis of " + std::to_string(gb.basis().basis.size()) + " elements passes the Buchberger criterion");
  const MembershipWitness w = normal_form(p, gb);
  Poly recon = w.remainder;
  for (std::size_t k = 0; k < w.cofactors.size(); ++k) recon += w.cofactors[k] * gb.basis().basis[k];
  r.check(recon == p, "cofactors and remainder reconstruct the target");
  const bool want = r.str("expect") == "member";
  r.check(w.is_member() == want, w.is_member() ? "remainder 0: member"
                                               : "remainder " + shorten(format(w.remainder)) + ": not a member");
}

void op_member_localized(Run& r) {
  const IdealFile& f = r.cat.ideal(r.str("ideal"));
  const Ideal ideal = powered(f, r.a.value("power", 1u));
  const Poly p = r.poly(r.arg("poly"), f.vars);
  const auto pt = gauss_point(r.arg("point"));
  const LocalMembership lm = member_localized(p, ideal, pt);
  const bool want = r.str("expect") == "member";
  r.check(lm.member == want, std::string(lm.member ? "member" : "not a member") + " after localizing at " +
                                 point_text(pt));
  const auto got = formatted(lm.quotient.basis().basis);
  std::string joined;
  for (const auto& s : got) joined += (joined.empty() ? "" : ", ") + s;
  if (r.a.contains("quotient")) {
    const auto want_q = r.value("quotient").get<std::vector<std::string>>();
    r.check(got == want_q, "quotient basis [" + shorten(joined) + "]");
  } else {
    r.note("quotient basis [" + shorten(joined) + "]");
  }
  std::string ev;
  for (const auto& e : lm.evaluations) ev += (ev.empty() ? "" : ", ") + to_string(e);
  r.note("quotient generators at the point: " + ev);
}

void op_order_bound(Run& r) {
  const IdealFile& f = r.cat.ideal(r.str("ideal"));
  const Poly p = r.poly(r.arg("poly"), f.vars);
  const auto ob = local_order_bound(p, f.ideal());
  const json& e = r.arg("expect");
  if (e.is_null()) {
    r.check(!ob, ob ? "unexpected obstruction" : "no order obstruction");
    return;
  }
  const bool match = ob && ob->order == e.at(0).get<std::uint64_t>() && ob->bound == e.at(1).get<std::uint64_t>();
  r.check(match, ob ? "ord(f) = " + std::to_string(ob->order) + " < " + std::to_string(ob->bound)
                    : std::string("no obstruction"));
}

void op_dimension(Run& r) {
  const IdealFile& f = r.cat.ideal(r.str("ideal"));
  const std::size_t d = dimension(groebner(f.ideal(), MonOrder::grevlex()));
  r.check(d == r.arg("expect").get<std::size_t>(), "Krull dimension " + std::to_string(d));
}

void op_jacobian_rank(Run& r) {
  const IdealFile& f = r.cat.ideal(r.str("ideal"));
  for (const auto& c : r.arg("points")) {
    const auto pt = gauss_point(c.at("point"));
    bool on = true;
    for (const auto& g : f.gens) on = on && evaluate(g, pt).is_zero();
    r.check(on, point_text(pt) + " lies on the variety");
    const std::size_t rank = jacobian_rank_at(f.gens, pt);
    r.check(rank == c.at("rank").get<std::size_t>(), "Jacobian rank " + std::to_string(rank) + " at " + point_text(pt));
  }
}

void op_evaluate(Run& r) {
  const VarsPtr v = r.vars();
  const Poly p = r.poly(r.arg("poly"), v);
  const auto pt = gauss_point(r.arg("point"));
  const GaussRat got = evaluate(p, pt);
  r.check(got == parse_gauss(r.str("expect")), "value at " + point_text(pt) + " is " + to_string(got));
}

void op_hessian_minor(Run& r) {
  const VarsPtr v = r.vars();
  const Poly p = r.poly(r.arg("poly"), v);
  std::vector<std::vector<Poly>> m;
  for (const auto& row : r.arg("entries")) {
    m.emplace_back();
    for (const auto& e : row) m.back().push_back(derivative(derivative(p, e.at(0).get<std::string>()), e.at(1).get<std::string>()));
  }
  const Poly det = determinant(m);
  if (r.a.contains("det")) {
    const Poly want = r.poly(r.arg("det"), v);
    r.check(det == want, "determinant " + shorten(format(det)));
  }
  if (r.a.contains("det_expanded"))
    r.check(format(det) == r.value("det_expanded").get<std::string>(), "expanded form matches the frozen value");
  if (!r.a.contains("modulo")) return;
  const Ideal gb = groebner(r.cat.ideal(r.str("modulo")).ideal(), MonOrder::grevlex());
  auto nf = [&](const Poly& q) { return normal_form(q, gb).remainder; };
  std::vector<std::vector<Poly>> red;
  std::vector<std::vector<std::string>> red_text;
  for (const auto& row : m) {
    red.emplace_back();
    red_text.emplace_back();
    for (const auto& e : row) {
      red.back().push_back(nf(e));
      red_text.back().push_back(format(red.back().back()));
    }
  }
  if (r.a.contains("reduced_entries")) {
    std::string shown;
    for (const auto& row : red_text)
      for (const auto& s : row) shown += (shown.empty() ? "" : "; ") + s;
    r.check(red_text == r.value("reduced_entries").get<std::vector<std::vector<std::string>>>(),
            "reduced entries " + shown);
  }
  if (r.a.contains("reduced_det")) {
    const Poly want = r.poly(r.arg("reduced_det"), v);
    const Poly rd = determinant(red);
    r.check(rd == want, "determinant of the reduced matrix " + format(rd));
    r.check(nf(det - want).is_zero(), "determinant is congruent to " + format(want) + " modulo the ideal");
  }
  if (r.a.contains("det_normal_form"))
    r.check(format(nf(det)) == r.value("det_normal_form").get<std::string>(),
            "normal form of the determinant " + format(nf(det)));
}

// yh^8 -> h(y), zh^2 -> z^2 - 2 z^3; every hat exponent must allow it.
std::optional<Poly> unhat(const Poly& q, const VarsPtr& xyz) {
  const Poly x = Poly::variable(xyz, std::size_t{0});
  const Poly y = Poly::variable(xyz, std::size_t{1});
  const Poly z = Poly::variable(xyz, std::size_t{2});
  const Poly h = y.pow(8) - y.pow(10) + y.pow(11);
  const Poly s = z.pow(2) - z.pow(3) * Rat(2);
  Poly out(xyz);
  for (const auto& t : q.terms()) {
    if (t.mono[1] % 8 || t.mono[2] % 2) return std::nullopt;
    out += x.pow(t.mono[0]) * h.pow(t.mono[1] / 8) * s.pow(t.mono[2] / 2) * t.coef;
  }
  return out;
}

void op_hat_identity(Run& r) {
  const std::uint64_t n = r.arg("trunc").get<std::uint64_t>();
  const VarsPtr xyz = r.vars("source_vars");
  const VarsPtr hv = r.vars("hat_vars");
  std::vector<std::pair<Poly, Poly>> pairs;
  if (r.a.contains("source_ideal")) {
    const auto& s = r.cat.ideal(r.str("source_ideal")).gens;
    const auto& h = r.cat.ideal(r.str("hat_ideal")).gens;
    for (std::size_t k = 0; k < std::min(s.size(), h.size()); ++k) pairs.emplace_back(embed(s[k], xyz), embed(h[k], hv));
  }
  if (r.a.contains("pairs"))
    for (const auto& p : r.arg("pairs")) pairs.emplace_back(r.poly(p.at(0), xyz), r.poly(p.at(1), hv));
  const HatCoordinates hc = hat_coordinates(n);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const auto& [src, hat] = pairs[k];
    const std::string tag = "pair " + std::to_string(k + 1) + ": ";
    const auto back = unhat(hat, xyz);
    r.check(back && *back == src, tag + "hat form rewritten through yh^8 and zh^2 equals the source polynomial");
    const TruncSeries dev = hat_change(src, hc);
    const Poly d = dev.body().with_vars(hv) - hat.truncated(n);
    r.check(d.is_zero(), tag + "series development through degree " + std::to_string(n) + " equals the hat form");
  }
}

void op_hat_coefficient(Run& r) {
  const std::uint64_t n = r.arg("trunc").get<std::uint64_t>();
  const Poly p = r.poly(r.arg("poly"), r.vars("source_vars"));
  const TruncSeries s = hat_change(p, n);
  const VarsPtr hv = s.vars_ptr();
  const Monomial m = mono_of(r.arg("monomial"));
  const Rat c = s.coeff(m);
  r.check(c != 0 && c == parse_rat(r.value("expect").get<std::string>()),
          "coefficient of " + format_monomial(m, *hv) + " is " + to_string(c));
  const Poly low = lowest_part(s.body());
  r.note("lowest-degree part " + shorten(format(low)));
  if (r.a.contains("golden")) {
    const TruncSeries& g = r.cat.series(r.str("golden"));
    const bool same = g.trunc() == n && embed(g.body(), hv) == s.body();
    r.check(same, "development matches the frozen series through degree " + std::to_string(n));
  }
}

void op_alpha_constants(Run& r) {
  const std::uint64_t n = r.arg("trunc").get<std::uint64_t>();
  const HatCoordinates hc = hat_coordinates(n + 8);
  const VarsPtr yv = hc.y_of.vars_ptr();
  const Poly yh = Poly::variable(yv, std::size_t{0});
  const TruncSeries diff(pow_truncated(hc.y_of.body(), 6, n + 8) - yh.pow(6), n + 8);
  const TruncSeries alpha = divide_by_monomial(diff, Monomial{8});
  const TruncSeries other = TruncSeries::constant(yv, Rat(1), n) - alpha * alpha * Rat(1, 4);
  const auto want = r.value("expect").get<std::vector<std::string>>();
  const std::vector<const TruncSeries*> got{&alpha, &other};
  const char* names[] = {"alpha", "1 - alpha^2/4"};
  for (std::size_t k = 0; k < 2; ++k)
    r.check(got[k]->constant_term() == parse_rat(want.at(k)),
            std::string("constant term of ") + names[k] + " is " + to_string(got[k]->constant_term()));
  if (r.a.contains("golden")) {
    const auto ids = r.arg("golden").get<std::vector<std::string>>();
    for (std::size_t k = 0; k < std::min<std::size_t>(2, ids.size()); ++k) {
      const TruncSeries& g = r.cat.series(ids[k]);
      const bool same = g.body() == got[k]->truncated(g.trunc()).body().with_vars(g.vars_ptr());
      r.check(same, std::string(names[k]) + " matches the frozen series through degree " + std::to_string(g.trunc()));
    }
  }
}

void op_gsecond(Run& r) {
  const std::uint64_t n = r.arg("trunc").get<std::uint64_t>();
  const HatPieces h = hat_pieces(r.cat, n);
  const Poly g2 = gsecond(h);
  const Poly xh = Poly::variable(h.hv, "xh");
  const Poly yh8 = Poly::variable(h.hv, "yh").pow(8);
  const Poly a = h.alpha;
  const Poly display = (mul_truncated(a * xh.pow(2), h.B.pow(2), n) + (h.A - mul_truncated(a, h.C, n) * Rat(1, 2)).pow(2) +
                        mul_truncated(Poly::constant(h.hv, Rat(1)) - mul_truncated(a, a, n) * Rat(1, 4), h.C.pow(2), n))
                           .truncated(n);
  const Poly defect = display - g2;
  const Rat k = parse_rat(r.value("defect_factor").get<std::string>());
  const Poly predicted = mul_truncated(a * yh8, h.P, n) * k;
  r.check(!defect.is_zero(), "displayed rewrite differs from g'' through degree " + std::to_string(n));
  r.check(defect == predicted, "display - g'' = " + to_string(k) + " * alpha * yh^8 * phi^*f1 through degree " +
                                   std::to_string(n));
  // Restrict to a curve; a negative lowest term rules out any sum of squares.
  const VarsPtr tv = make_vars({"t"});
  std::vector<TruncSeries> curve;
  for (const auto& c : r.value("jet_curve")) curve.push_back(TruncSeries(parse_poly(c.get<std::string>(), tv), n));
  const TruncSeries jet = compose(TruncSeries(g2, n), curve);
  const Poly low = lowest_part(jet.body());
  r.check(format(low) == r.value("jet_lowest").get<std::string>(), "g'' along the curve starts with " + format(low));
  r.check(low.size() == 1 && low.terms()[0].coef < 0 && low.terms()[0].mono.degree() <= n,
          "lowest term is negative, so g'' is not a sum of squares of series");
}

void op_gprime_lowest(Run& r) {
  const std::uint64_t n = r.arg("trunc").get<std::uint64_t>();
  const HatPieces h = hat_pieces(r.cat, n);
  const Poly yh = Poly::variable(h.hv, "yh");
  const Poly d = pow_truncated(h.y, 4, n) - yh.pow(4) - yh.pow(6) * Rat(1, 4);
  const Poly low = lowest_part(d.truncated(n));
  r.check(format(low) == r.str("expect"), "y^4 - yh^4 - yh^6/4 starts with " + format(low));
}

void op_non_sos(Run& r) {
  const Poly base = r.poly(r.arg("poly"), r.vars());
  for (const auto& c : r.arg("cases")) {
    std::map<std::string, Rat> fix;
    std::string tag;
    if (c.contains("fix"))
      for (const auto& [k, v] : c.at("fix").items()) {
        fix.emplace(k, parse_rat(v.get<std::string>()));
        tag += (tag.empty() ? "" : ", ") + k + " = " + v.get<std::string>();
      }
    tag = tag.empty() ? "" : "[" + tag + "] ";
    const Poly p = specialize(base, fix);
    const auto obs = find_non_sos_obstruction(p);
    r.check(obs.has_value(), tag + (obs ? "obstruction found" : "no Newton obstruction"));
    if (!obs) continue;
    r.check(format_monomial(obs->corner, p.vars()) == c.at("corner").get<std::string>(),
            tag + "corner " + format_monomial(obs->corner, p.vars()));
    r.check(obs->coefficient == parse_rat(c.at("coefficient").get<std::string>()),
            tag + "corner coefficient " + to_string(obs->coefficient));
    if (c.contains("support")) {
      const auto want = r.value(c.at("support")).get<std::vector<Point>>();
      const std::vector<Point> got(obs->support.points.begin(), obs->support.points.end());
      r.check(got == std::vector<Point>(want.begin(), want.end()),
              tag + "half Newton polytope has " + std::to_string(got.size()) + " lattice points");
    }
    const Verdict v = verify_non_sos(*obs);
    r.check(v.ok, tag + "obstruction verifies independently");
  }
}

void op_sample(Run& r) {
  const Poly p = r.poly(r.arg("poly"), r.vars());
  GridBox box;
  for (const auto& b : r.arg("box")) box.bounds.emplace_back(parse_rat(b.at(0).get<std::string>()), parse_rat(b.at(1).get<std::string>()));
  box.step = parse_rat(r.str("step"));
  const SampleResult s = sample_nonnegativity(p, box);
  if (s.counterexample) {
    r.check(false, "negative value " + to_string(s.value) + " at " + point_text(s.point));
  } else {
    r.check(true, "no negative value on " + std::to_string(s.evaluated) + " grid points");
  }
}

TruncSeries adic_defect(const TruncSeries& g, const AdicResult& res, std::span<const Rat> scales) {
  TruncSeries d = g;
  for (std::size_t i = 0; i < res.a.size(); ++i) {
    const TruncSeries xi = TruncSeries::variable(g.vars_ptr(), i, g.trunc());
    const TruncSeries s = xi + res.a[i];
    d += (xi * xi - s * s) * scales[i];
  }
  return d - res.b;
}

bool adic_case(Run& r, const TruncSeries& g, std::size_t rank, const std::vector<Rat>& scales, bool quiet) {
  const AdicResult res = adic_decompose(g, rank, scales);
  const TruncSeries d = adic_defect(g, res, scales);
  bool ok = d.body().is_zero();
  for (const auto& t : res.b.body().terms())
    for (std::size_t i = 0; i < rank; ++i) ok = ok && t.mono[i] == 0;
  if (!quiet || !ok)
    r.check(ok, "g = " + shorten(format(g.body()), 60) + ", r = " + std::to_string(rank) +
                    ": defect vanishes through degree " + std::to_string(g.trunc()) + ", b free of x_1..x_r");
  return ok;
}

void op_adic(Run& r) {
  for (const auto& c : r.a.value("cases", json::array())) {
    const VarsPtr v = make_vars(c.at("vars").get<std::vector<std::string>>());
    const std::uint64_t n = c.at("trunc").get<std::uint64_t>();
    const TruncSeries g(r.poly(c.at("g"), v).truncated(n), n);
    const std::size_t rank = c.at("r").get<std::size_t>();
    std::vector<Rat> scales(rank, Rat(1));
    if (c.contains("scales"))
      for (std::size_t i = 0; i < rank; ++i) scales[i] = parse_rat(c.at("scales").at(i).get<std::string>());
    adic_case(r, g, rank, scales, false);
    if (c.contains("a")) {
      const AdicResult res = adic_decompose(g, rank, scales);
      const auto want = c.at("a").get<std::vector<std::string>>();
      r.check(formatted({res.a[0].body()})[0] == want.at(0), "a_1 = " + shorten(format(res.a[0].body())));
    }
  }
  if (!r.a.contains("random")) return;
  const json& spec = r.arg("random");
  std::mt19937_64 rng(spec.at("seed").get<std::uint64_t>());
  const std::size_t count = spec.at("count").get<std::size_t>();
  const std::uint64_t n = spec.at("trunc").get<std::uint64_t>();
  const std::size_t arity_max = spec.at("arity_max").get<std::size_t>();
  const VarList names{"x1", "x2", "x3", "x4", "x5"};
  std::size_t runs = 0, good = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t arity = 1 + rng() % arity_max;
    const VarsPtr v = make_vars(VarList(names.begin(), names.begin() + arity));
    Poly g(v);
    const std::size_t terms = 1 + rng() % 5;
    for (std::size_t t = 0; t < terms; ++t) {
      std::vector<Monomial::Exponent> e(arity, 0);
      const std::uint64_t deg = 3 + rng() % (n - 2);
      for (std::uint64_t d = 0; d < deg; ++d) ++e[rng() % arity];
      const long coef = static_cast<long>(rng() % 9) - 4;
      g += Poly::monomial(v, Monomial(std::span<const Monomial::Exponent>(e)), Rat(coef == 0 ? 1 : coef));
    }
    const TruncSeries gs(g.truncated(n), n);
    for (std::size_t rank = 1; rank <= arity; ++rank) {
      ++runs;
      good += adic_case(r, gs, rank, std::vector<Rat>(rank, Rat(1)), true);
    }
  }
  r.check(good == runs, std::to_string(good) + " of " + std::to_string(runs) + " seeded random decompositions exact through degree " +
                            std::to_string(n));
}

void op_complete_squares(Run& r) {
  const VarsPtr v = r.vars();
  const std::uint64_t n = r.arg("trunc").get<std::uint64_t>();
  const TruncSeries f(r.poly(r.arg("poly"), v).truncated(n), n);
  const auto res = complete_squares(f);
  if (auto* na = std::get_if<NotApplicable>(&res)) {
    r.check(false, "square completion not applicable: " + na->reason);
    return;
  }
  const auto& sc = std::get<SquareCompletion>(res);
  TruncSeries sum = sc.residual;
  for (std::size_t k = 0; k < sc.scales.size(); ++k) sum += sc.roots[k] * sc.roots[k] * sc.scales[k];
  r.check(sum == f, std::to_string(sc.scales.size()) + " squares plus residual reconstruct f through degree " +
                        std::to_string(n));
  std::string sc_text;
  for (const auto& s : sc.scales) sc_text += (sc_text.empty() ? "" : ", ") + to_string(s);
  r.check(sc_text == r.str("scales"), "scales " + sc_text);
  std::string rv;
  for (auto i : sc.residual_vars) rv += (rv.empty() ? "" : " ") + (*v)[i];
  r.check(rv == r.str("residual_vars"), "residual lives in [" + rv + "]");
  for (std::size_t k = 0; k < sc.roots.size(); ++k) r.note("root " + std::to_string(k + 1) + ": " + shorten(format(sc.roots[k].body())));
  r.note("residual: " + shorten(format(sc.residual.body())));
}

void op_birational(Run& r) {
  const VarsPtr v = r.vars();
  std::vector<std::vector<GaussRat>> avoid, keep;
  for (const auto& p : r.arg("avoid")) avoid.push_back(gauss_point(p));
  for (const auto& p : r.a.value("keep", json::array())) keep.push_back(gauss_point(p));
  const BirationalAvoid m = birational_avoid(v, avoid, keep);
  const Verdict vd = verify_birational_avoid(m, avoid, keep);
  r.check(vd.ok, vd.ok ? "composite map avoids every listed point and is defined at the kept ones" : vd.reason);
  const VarsPtr tv = make_vars({"t"});
  for (std::size_t k = 0; k < m.steps.size(); ++k) r.note("step " + std::to_string(k + 1) + ": P = " + format(m.steps[k].p.with_vars(tv)));
  if (r.a.contains("expect_p")) {
    std::vector<std::string> ps;
    for (const auto& s : m.steps) ps.push_back(format(s.p.with_vars(tv)));
    r.check(ps == r.arg("expect_p").get<std::vector<std::string>>(), "step polynomials match");
  }
}

void op_certificate(Run& r) {
  const std::vector<std::string> names =
      r.a.contains("names") ? r.arg("names").get<std::vector<std::string>>() : std::vector<std::string>{r.str("name")};
  const bool want = r.str("expect") == "ok";
  for (const auto& name : names) {
    const std::string text = read_file(r.cat.dir() / "certs" / (name + ".json"));
    const AnyCert c = parse_certificate(text);
    r.note(name + ": kind " + certificate_kind(c));
    const CertOutcome out = verify_certificate(c);
    for (const auto& l : out.lines) r.note(shorten(l));
    r.check(out.ok == want, name + (out.ok ? " verifies" : " is rejected"));
    r.check(text == build_certificate_text(r.cat, name), name + " equals the certificate rebuilt from the catalog");
  }
}

using Op = void (*)(Run&);

const std::map<std::string, Op>& ops() {
  static const std::map<std::string, Op> table{
      {"identity", op_identity},
      {"pullback_ideal", op_pullback_ideal},
      {"member", op_member},
      {"member_localized", op_member_localized},
      {"order_bound", op_order_bound},
      {"dimension", op_dimension},
      {"jacobian_rank", op_jacobian_rank},
      {"evaluate", op_evaluate},
      {"hessian_minor", op_hessian_minor},
      {"hat_identity", op_hat_identity},
      {"hat_coefficient", op_hat_coefficient},
      {"alpha_constants", op_alpha_constants},
      {"gsecond", op_gsecond},
      {"gprime_lowest", op_gprime_lowest},
      {"non_sos", op_non_sos},
      {"sample", op_sample},
      {"adic", op_adic},
      {"complete_squares", op_complete_squares},
      {"birational", op_birational},
      {"certificate", op_certificate},
  };
  return table;
}

}  // namespace

ClaimResult run_claim(const Catalog& catalog, const ClaimSpec& claim) {
  ClaimResult res{claim.id, claim.about, false, {}};
  try {
    const json a = json::parse(claim.args_json);
    auto it = ops().find(claim.op);
    if (it == ops().end()) throw Error("manifest_error", "unknown op '" + claim.op + "'");
    Run run{catalog, a, res.details};
    it->second(run);
    res.passed = run.ok;
  } catch (const Error& e) {
    res.details.push_back("FAIL error: " + e.kind() + ": " + e.what());
    res.passed = false;
  } catch (const json::exception& e) {
    res.details.push_back(std::string("FAIL error: manifest_error: ") + e.what());
    res.passed = false;
  }
  return res;
}

Report run_claims(const Catalog& catalog, const std::vector<ClaimSpec>& claims, const std::vector<std::string>& filter,
                  unsigned jobs) {
  std::vector<const ClaimSpec*> selected;
  const bool all = filter.empty() || (filter.size() == 1 && filter[0] == "all");
  if (all) {
    for (const auto& c : claims) selected.push_back(&c);
  } else {
    std::set<std::string> want;
    for (const auto& id : filter) {
      if (std::none_of(claims.begin(), claims.end(), [&](const ClaimSpec& c) { return c.id == id; }))
        throw Error("unknown_claim", "no claim '" + id + "'");
      want.insert(id);
    }
    for (const auto& c : claims)
      if (want.count(c.id)) selected.push_back(&c);
  }
  Report rep;
  rep.results.resize(selected.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < selected.size();) rep.results[k] = run_claim(catalog, *selected[k]);
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(selected.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& r : rep.results) (r.passed ? rep.passed : rep.failed)++;
  return rep;
}

std::string format_report(const Report& r) {
  std::string s;
  for (const auto& c : r.results) {
    s += (c.passed ? "PASS " : "FAIL ") + c.id + "  " + c.about + "\n";
    for (const auto& d : c.details) s += "    " + d + "\n";
  }
  s += std::to_string(r.passed) + " passed, " + std::to_string(r.failed) + " failed\n";
  return s;
}

std::string format_report_machine(const Report& r) {
  json doc;
  doc["passed"] = r.passed;
  doc["failed"] = r.failed;
  doc["claims"] = json::array();
  for (const auto& c : r.results)
    doc["claims"].push_back({{"id", c.id}, {"passed", c.passed}, {"details", c.details}});
  return doc.dump(1) + "\n";
}

// ---- shipped certificates ----

namespace {

StructNonneg plain() { return StructNonneg{}; }
StructNonneg scaled(const Rat& c) { return StructNonneg{c, {}, {}}; }

SosCert g_sos(const Catalog& cat) {
  const HatPieces h = hat_pieces(cat, 0);
  const VarsPtr v = h.hv;
  auto P = [&](const char* t) { return parse_poly(t, v); };
  const Poly g = -P("yh^6") * h.P + h.A.pow(2) + P("yh^4") * h.B.pow(2);
  const Poly d = P("xh^2 - yh^6");
  SosCert cert{SosRing::polynomial, 0, g, {}};
  for (const char* m : {"xh^4", "xh^3*yh^3", "xh^2*yh^6", "xh*yh^9", "yh^12"}) cert.items.push_back({plain(), P(m) * d});
  cert.items.push_back({scaled(Rat(2)), P("xh*yh^4*zh") * d});
  for (const char* m : {"xh^2*yh^7*zh", "xh^2*yh^2*zh^2", "yh^8*zh^2", "yh^3*zh^3"}) cert.items.push_back({plain(), P(m)});
  return cert;
}

// g' = (y^4 - yh^4) B^2 = (1/4) yh^6 B^2 (1 + s^2) with s^2 = q - 1, q = 4 (y^4 - yh^4) / yh^6.
SosCert gprime_sos(const Catalog& cat, std::uint64_t n) {
  const HatPieces h = hat_pieces(cat, n);
  const Poly yh = Poly::variable(h.hv, "yh");
  const Poly d = pow_truncated(h.y, 4, n + 8) - yh.pow(4);
  const TruncSeries q = divide_by_monomial(TruncSeries(d, n + 8), Monomial{0, 6, 0}) * Rat(4);
  const Poly s = nth_root_unit(q - TruncSeries::constant(h.hv, Rat(1), q.trunc()), 2).body();
  const Poly yb = yh.pow(3) * h.B;
  return {SosRing::truncated, n, mul_truncated(d, h.B.pow(2), n),
          {{scaled(Rat(1, 4)), yb.truncated(n)}, {scaled(Rat(1, 4)), mul_truncated(s, yb, n)}}};
}

// The displayed rewrite of g'', submitted as a certificate for g''. It does not verify.
SosCert gsecond_display(const Catalog& cat, std::uint64_t n) {
  const HatPieces h = hat_pieces(cat, n);
  const Poly& a = h.alpha;
  const Poly one = Poly::constant(h.hv, Rat(1));
  const Rat a0(3, 4), b0(55, 64);
  const TruncSeries ra = nth_root_unit(TruncSeries(a * Rat(1 / a0), n), 2);
  const TruncSeries rb = nth_root_unit(TruncSeries((one - mul_truncated(a, a, n) * Rat(1, 4)) * Rat(1 / b0), n), 2);
  const Poly xb = Poly::variable(h.hv, "xh") * h.B;
  return {SosRing::truncated, n, gsecond(h),
          {{scaled(a0), mul_truncated(ra.body(), xb, n)},
           {plain(), (h.A - mul_truncated(a, h.C, n) * Rat(1, 2)).truncated(n)},
           {scaled(b0), mul_truncated(rb.body(), h.C, n)}}};
}

AmGmCert cxbad_amgm(const Catalog& cat) {
  const Poly& f = cat.poly("f_cxbad");
  const VarsPtr v = f.vars_ptr();
  auto P = [&](const char* t) { return parse_poly(t, v); };
  const Atom z2p1{P("z"), Rat(1)};
  return {{StructNonneg{Rat(1), {P("x^5")}, {}}, StructNonneg{Rat(1), {P("x*y^3")}, {}},
           StructNonneg{Rat(1), {P("z^2 + 1")}, {z2p1}}},
          StructNonneg{Rat(1), {P("x^2*y")}, {z2p1}},
          f};
}

SosCert motzkin4_series_sos(const Catalog& cat, std::uint64_t n) {
  const Poly& f = cat.poly("f_motzkin4");
  const VarsPtr v = f.vars_ptr();
  auto P = [&](const char* t) { return parse_poly(t, v); };
  const Poly root = nth_root_unit(TruncSeries(P("1 - w"), n), 2).body();
  return {SosRing::truncated, n, f,
          {{plain(), P("x^3")}, {plain(), P("w*y*z^2")}, {plain(), P("w*y^2*z")}, {plain(), (root * P("x*y*z")).truncated(n)}}};
}

// Squares of the positive terms: the natural attempt, which leaves the negative term behind.
SosCert naive_sos_attempt(const Poly& p) {
  SosCert cert{SosRing::polynomial, 0, p, {}};
  for (const auto& t : p.terms()) {
    if (t.coef <= 0) continue;
    Monomial half(p.arity());
    bool even = true;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      even = even && t.mono[i] % 2 == 0;
      half.set(i, t.mono[i] / 2);
    }
    if (even) cert.items.push_back({scaled(t.coef), Poly::monomial(p.vars_ptr(), half)});
  }
  return cert;
}

Poly motzkin4_at(const Catalog& cat, const std::string& w0) {
  return specialize(cat.poly("f_motzkin4"), {{"w", parse_rat(w0)}, {"x", Rat(1)}});
}

const std::map<std::string, std::string> kMotzkinW{{"w2", "2"}, {"w3_2", "3/2"}, {"w5", "5"}};

BadPointCert bad_point(const Catalog& cat, const std::string& which) {
  auto pt = [](std::initializer_list<const char*> xs) {
    std::vector<GaussRat> p;
    for (const char* x : xs) p.push_back(parse_gauss(x));
    return p;
  };
  if (which == "symb") {
    const IdealFile& i = cat.ideal("I_C");
    return {i.vars, i.gens, embed(cat.poly("f1"), i.vars), pt({"0", "0", "0"}), NonMembershipMethod::order_bound, 0,
            Monomial(3), {{pt({"1", "1", "1"}), 2}}};
  }
  if (which == "cxbad") {
    const IdealFile& i = cat.ideal("I_Gamma");
    return {i.vars, i.gens, embed(cat.poly("f_cxbad"), i.vars), pt({"0", "0", "i"}), NonMembershipMethod::localized, 0,
            Monomial(3),
            {{pt({"1", "1", "0"}), 2}, {pt({"-1", "1", "0"}), 2}, {pt({"1", "-1", "0"}), 2}, {pt({"-1", "-1", "0"}), 2}}};
  }
  if (which != "f2") throw Error("unknown_certificate", "no bad-point certificate '" + which + "'");
  const IdealFile& i = cat.ideal("I_D");
  return {i.vars, i.gens, embed(cat.poly("f2"), i.vars), pt({"0", "0", "0"}), NonMembershipMethod::cone, 16,
          Monomial{0, 6, 6}, {{pt({"1", "1", "1"}), 2}}};
}

}  // namespace

std::vector<std::string> shipped_certificate_names() {
  std::vector<std::string> out{"bad_point_cxbad", "bad_point_f2",        "bad_point_symb",     "cxbad_amgm",
                               "f2_cone",         "g_sos",               "gprime_sos",         "gsecond_display",
                               "motzkin4_series_sos", "motzkin_nonsos", "motzkin_sos_attempt"};
  for (const auto& [k, _] : kMotzkinW) {
    out.push_back("motzkin4_" + k + "_nonsos");
    out.push_back("motzkin4_" + k + "_sos_attempt");
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string build_certificate_text(const Catalog& cat, const std::string& name) {
  constexpr std::uint64_t kTrunc = 48;
  auto obstruction = [](const Poly& p) -> AnyCert {
    auto obs = find_non_sos_obstruction(p);
    if (!obs) throw Error("no_certificate", "no Newton obstruction for " + format(p));
    return *obs;
  };
  AnyCert c = [&]() -> AnyCert {
    if (name == "g_sos") return g_sos(cat);
    if (name == "gprime_sos") return gprime_sos(cat, kTrunc);
    if (name == "gsecond_display") return gsecond_display(cat, kTrunc);
    if (name == "cxbad_amgm") return cxbad_amgm(cat);
    if (name == "motzkin4_series_sos") return motzkin4_series_sos(cat, 16);
    if (name == "motzkin_nonsos") return obstruction(cat.poly("motzkin"));
    if (name == "motzkin_sos_attempt") return naive_sos_attempt(cat.poly("motzkin"));
    if (name == "f2_cone") {
      const IdealFile& i = cat.ideal("I_D");
      return hat_cone_certificate({i.vars, i.gens, embed(cat.poly("f2"), i.vars)}, kTrunc, Monomial{0, 6, 6});
    }
    if (name.rfind("bad_point_", 0) == 0) return bad_point(cat, name.substr(10));
    for (const auto& [k, w0] : kMotzkinW) {
      if (name == "motzkin4_" + k + "_nonsos") return obstruction(motzkin4_at(cat, w0));
      if (name == "motzkin4_" + k + "_sos_attempt") return naive_sos_attempt(motzkin4_at(cat, w0));
    }
    throw Error("unknown_certificate", "no shipped certificate '" + name + "'");
  }();
  return write_certificate(c);
}

}  // namespace badpoints
