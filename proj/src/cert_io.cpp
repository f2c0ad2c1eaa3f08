#include "badpoints/cert_io.hpp"

#include <set>

#include "badpoints/error.hpp"
#include "json.hpp"

namespace badpoints {

using nlohmann::json;

namespace {

// Mirrors docs/certificate.schema.json. Every failure names the JSON pointer.
[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw Error("schema_error", (path.empty() ? std::string("/") : path) + ": " + what);
}

const json& field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_fail(path, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_fail(path, "missing field \"" + key + "\"");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

void allow_only(const json& obj, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) schema_fail(path, "unknown field \"" + it.key() + "\"");
  }
}

const std::string& as_string(const json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected string");
  return j.get_ref<const std::string&>();
}

const json& as_array(const json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected array");
  return j;
}

std::uint64_t as_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    schema_fail(path, "expected nonnegative integer");
  return j.get<std::uint64_t>();
}

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

Rat read_rat(const json& j, const std::string& path) {
  const std::string& s = as_string(j, path);
  try {
    return parse_rat(s);
  } catch (const Error& e) {
    schema_fail(path, "bad rational \"" + s + "\"");
  }
}

GaussRat read_gauss(const json& j, const std::string& path) {
  const std::string& s = as_string(j, path);
  try {
    return parse_gauss(s);
  } catch (const Error& e) {
    schema_fail(path, "bad Gaussian rational \"" + s + "\"");
  }
}

Poly read_poly(const json& j, const VarsPtr& vars, const std::string& path) {
  const std::string& s = as_string(j, path);
  try {
    return parse_poly(s, vars);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

VarsPtr read_vars(const json& j, const std::string& path) {
  as_array(j, path);
  if (j.empty()) schema_fail(path, "need at least one variable");
  VarList names;
  std::set<std::string> seen;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string& v = as_string(j[k], at(path, k));
    if (!seen.insert(v).second) schema_fail(at(path, k), "duplicate variable \"" + v + "\"");
    names.push_back(v);
  }
  return make_vars(std::move(names));
}

Point read_exponents(const json& j, std::size_t arity, const std::string& path) {
  as_array(j, path);
  if (j.size() != arity) schema_fail(path, "expected " + std::to_string(arity) + " exponents");
  Point p;
  for (std::size_t k = 0; k < j.size(); ++k) p.push_back(static_cast<std::int64_t>(as_count(j[k], at(path, k))));
  return p;
}

std::vector<GaussRat> read_point(const json& j, std::size_t arity, const std::string& path) {
  as_array(j, path);
  if (j.size() != arity) schema_fail(path, "expected " + std::to_string(arity) + " coordinates");
  std::vector<GaussRat> p;
  for (std::size_t k = 0; k < j.size(); ++k) p.push_back(read_gauss(j[k], at(path, k)));
  return p;
}

StructNonneg read_struct(const json& j, const VarsPtr& vars, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected object");
  allow_only(j, {"scalar", "squares", "atoms"}, path);
  StructNonneg s;
  if (auto* v = optional_field(j, "scalar")) s.scalar = read_rat(*v, at(path, "scalar"));
  if (auto* v = optional_field(j, "squares")) {
    as_array(*v, at(path, "squares"));
    for (std::size_t k = 0; k < v->size(); ++k) s.squares.push_back(read_poly((*v)[k], vars, at(at(path, "squares"), k)));
  }
  if (auto* v = optional_field(j, "atoms")) {
    as_array(*v, at(path, "atoms"));
    for (std::size_t k = 0; k < v->size(); ++k) {
      const std::string p = at(at(path, "atoms"), k);
      allow_only((*v)[k], {"g", "c"}, p);
      s.atoms.push_back({read_poly(field((*v)[k], "g", p), vars, at(p, "g")), read_rat(field((*v)[k], "c", p), at(p, "c"))});
    }
  }
  return s;
}

SosCert read_sos(const json& j, const VarsPtr& vars) {
  allow_only(j, {"kind", "vars", "ring", "trunc", "target", "items"}, "");
  SosCert c{SosRing::polynomial, 0, read_poly(field(j, "target", ""), vars, "/target"), {}};
  const std::string& ring = as_string(field(j, "ring", ""), "/ring");
  if (ring == "polynomial") {
    if (optional_field(j, "trunc")) schema_fail("/trunc", "only allowed with ring \"truncated\"");
  } else if (ring == "truncated") {
    c.ring = SosRing::truncated;
    c.trunc = as_count(field(j, "trunc", ""), "/trunc");
  } else {
    schema_fail("/ring", "expected \"polynomial\" or \"truncated\"");
  }
  const json& items = as_array(field(j, "items", ""), "/items");
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::string p = at("/items", k);
    allow_only(items[k], {"scale", "root"}, p);
    SosItem item{StructNonneg{}, read_poly(field(items[k], "root", p), vars, at(p, "root"))};
    if (auto* s = optional_field(items[k], "scale")) item.scale = read_struct(*s, vars, at(p, "scale"));
    c.items.push_back(std::move(item));
  }
  return c;
}

AmGmCert read_amgm(const json& j, const VarsPtr& vars) {
  allow_only(j, {"kind", "vars", "terms", "mean", "target"}, "");
  AmGmCert c{{}, {}, read_poly(field(j, "target", ""), vars, "/target")};
  const json& terms = as_array(field(j, "terms", ""), "/terms");
  for (std::size_t k = 0; k < terms.size(); ++k) c.terms.push_back(read_struct(terms[k], vars, at("/terms", k)));
  c.mean = read_struct(field(j, "mean", ""), vars, "/mean");
  return c;
}

NonSosObstruction read_non_sos(const json& j, const VarsPtr& vars) {
  allow_only(j, {"kind", "vars", "poly", "support", "beta", "corner", "coefficient", "pair_audit"}, "");
  const std::size_t n = vars->size();
  NonSosObstruction o{read_poly(field(j, "poly", ""), vars, "/poly"), {n, {}}, {}, Monomial(n), 0, {}};
  const json& sup = as_array(field(j, "support", ""), "/support");
  for (std::size_t k = 0; k < sup.size(); ++k) o.support.points.insert(read_exponents(sup[k], n, at("/support", k)));
  o.beta = read_exponents(field(j, "beta", ""), n, "/beta");
  o.corner = to_monomial(read_exponents(field(j, "corner", ""), n, "/corner"));
  o.coefficient = read_rat(field(j, "coefficient", ""), "/coefficient");
  const json& audit = as_array(field(j, "pair_audit", ""), "/pair_audit");
  for (std::size_t k = 0; k < audit.size(); ++k) {
    const std::string p = at("/pair_audit", k);
    as_array(audit[k], p);
    if (audit[k].size() != 2) schema_fail(p, "expected a pair");
    o.pair_audit.emplace_back(read_exponents(audit[k][0], n, at(p, 0)), read_exponents(audit[k][1], n, at(p, 1)));
  }
  return o;
}

ConeCertFile develop_hat(const HatSource& src, const VarsPtr& hat_vars, std::uint64_t trunc) {
  const HatCoordinates hc = hat_coordinates(trunc);
  auto develop = [&](const Poly& p) { return TruncSeries(hat_change(p, hc).body().with_vars(hat_vars), trunc); };
  ConeCertFile c{hat_vars, {}, develop(src.f), {}, src};
  for (const auto& g : src.gens) c.gens.push_back(develop(g));
  return c;
}

ConeCertFile read_cone(const json& j, const VarsPtr& vars) {
  allow_only(j, {"kind", "vars", "trunc", "gens", "f", "target", "products", "change", "source_vars"}, "");
  const std::uint64_t trunc = as_count(field(j, "trunc", ""), "/trunc");
  bool hat = false;
  VarsPtr source = vars;
  if (auto* ch = optional_field(j, "change")) {
    if (as_string(*ch, "/change") != "hat") schema_fail("/change", "only \"hat\" is supported");
    hat = true;
    source = read_vars(field(j, "source_vars", ""), "/source_vars");
    if (source->size() != 3) schema_fail("/source_vars", "hat coordinates need three variables");
    if (vars->size() != 3) schema_fail("/vars", "hat coordinates need three variables");
  } else if (optional_field(j, "source_vars")) {
    schema_fail("/source_vars", "only allowed with \"change\"");
  }
  ConeCertFile c{vars, {}, TruncSeries(Poly(vars), trunc), {}, std::nullopt};
  const json& gens = as_array(field(j, "gens", ""), "/gens");
  if (hat) {
    HatSource src{source, {}, read_poly(field(j, "f", ""), source, "/f")};
    for (std::size_t k = 0; k < gens.size(); ++k) src.gens.push_back(read_poly(gens[k], source, at("/gens", k)));
    c = develop_hat(src, vars, trunc);
  } else {
    c.f = TruncSeries(read_poly(field(j, "f", ""), vars, "/f").truncated(trunc), trunc);
    for (std::size_t k = 0; k < gens.size(); ++k)
      c.gens.push_back(TruncSeries(read_poly(gens[k], vars, at("/gens", k)).truncated(trunc), trunc));
  }
  c.cert.target = to_monomial(read_exponents(field(j, "target", ""), vars->size(), "/target"));
  if (auto* prods = optional_field(j, "products")) {
    as_array(*prods, "/products");
    for (std::size_t k = 0; k < prods->size(); ++k) {
      const std::string p = at("/products", k);
      const json& e = (*prods)[k];
      allow_only(e, {"i", "j", "support"}, p);
      ProductSupport ps{as_count(field(e, "i", p), at(p, "i")), as_count(field(e, "j", p), at(p, "j")), {}};
      const json& sup = as_array(field(e, "support", p), at(p, "support"));
      for (std::size_t m = 0; m < sup.size(); ++m)
        ps.support.push_back(to_monomial(read_exponents(sup[m], vars->size(), at(at(p, "support"), m))));
      c.cert.products.push_back(std::move(ps));
    }
  }
  return c;
}

BadPointCert read_bad_point(const json& j, const VarsPtr& vars) {
  allow_only(j, {"kind", "vars", "ideal", "f", "point", "method", "trunc", "cone_target", "density"}, "");
  const std::size_t n = vars->size();
  BadPointCert c{vars, {}, read_poly(field(j, "f", ""), vars, "/f"), {}, NonMembershipMethod::localized, 0, Monomial(n), {}};
  const json& ideal = as_array(field(j, "ideal", ""), "/ideal");
  if (ideal.empty()) schema_fail("/ideal", "need at least one generator");
  for (std::size_t k = 0; k < ideal.size(); ++k) c.ideal.push_back(read_poly(ideal[k], vars, at("/ideal", k)));
  c.point = read_point(field(j, "point", ""), n, "/point");
  const std::string& method = as_string(field(j, "method", ""), "/method");
  if (method == "localized") {
    c.method = NonMembershipMethod::localized;
  } else if (method == "order_bound") {
    c.method = NonMembershipMethod::order_bound;
  } else if (method == "cone") {
    c.method = NonMembershipMethod::cone;
    c.trunc = as_count(field(j, "trunc", ""), "/trunc");
    c.cone_target = to_monomial(read_exponents(field(j, "cone_target", ""), n, "/cone_target"));
  } else {
    schema_fail("/method", "expected \"localized\", \"order_bound\" or \"cone\"");
  }
  const json& density = as_array(field(j, "density", ""), "/density");
  for (std::size_t k = 0; k < density.size(); ++k) {
    const std::string p = at("/density", k);
    allow_only(density[k], {"point", "rank"}, p);
    c.density.push_back({read_point(field(density[k], "point", p), n, at(p, "point")),
                         static_cast<std::size_t>(as_count(field(density[k], "rank", p), at(p, "rank")))});
  }
  return c;
}

json write_struct(const StructNonneg& s) {
  json j = json::object();
  if (s.scalar != 1) j["scalar"] = to_string(s.scalar);
  if (!s.squares.empty()) {
    j["squares"] = json::array();
    for (const auto& p : s.squares) j["squares"].push_back(format(p));
  }
  if (!s.atoms.empty()) {
    j["atoms"] = json::array();
    for (const auto& a : s.atoms) j["atoms"].push_back({{"g", format(a.g)}, {"c", to_string(a.c)}});
  }
  return j;
}

json write_point(const Point& p) { return json(p); }
json write_point(const Monomial& m) { return json(to_point(m)); }
json write_point(const std::vector<GaussRat>& p) {
  json j = json::array();
  for (const auto& z : p) j.push_back(to_string(z));
  return j;
}

json vars_json(const VarList& v) { return json(v); }

}  // namespace

ConeCertFile hat_cone_certificate(const HatSource& src, std::uint64_t trunc, const Monomial& target) {
  if (src.vars->size() != 3) throw ArityMismatch(src.vars->size(), 3, "hat coordinates");
  ConeCertFile c = develop_hat(src, make_vars({"xh", "yh", "zh"}), trunc);
  c.cert = make_cone_obstruction(c.gens, target);
  return c;
}

AnyCert parse_certificate(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error("parse_error", std::string("certificate is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) schema_fail("", "expected object");
  const std::string& kind = as_string(field(j, "kind", ""), "/kind");
  const VarsPtr vars = read_vars(field(j, "vars", ""), "/vars");
  if (kind == "sos") return read_sos(j, vars);
  if (kind == "amgm") return read_amgm(j, vars);
  if (kind == "non_sos") return read_non_sos(j, vars);
  if (kind == "cone") return read_cone(j, vars);
  if (kind == "bad_point") return read_bad_point(j, vars);
  schema_fail("/kind", "unknown kind \"" + kind + "\"");
}

std::string certificate_kind(const AnyCert& c) {
  static const char* names[] = {"sos", "amgm", "non_sos", "cone", "bad_point"};
  return names[c.index()];
}

std::string write_certificate(const AnyCert& c) {
  json j;
  j["kind"] = certificate_kind(c);
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SosCert>) {
          j["vars"] = vars_json(x.target.vars());
          j["ring"] = x.ring == SosRing::polynomial ? "polynomial" : "truncated";
          if (x.ring == SosRing::truncated) j["trunc"] = x.trunc;
          j["target"] = format(x.target);
          j["items"] = json::array();
          for (const auto& it : x.items) j["items"].push_back({{"scale", write_struct(it.scale)}, {"root", format(it.root)}});
        } else if constexpr (std::is_same_v<T, AmGmCert>) {
          j["vars"] = vars_json(x.target.vars());
          j["terms"] = json::array();
          for (const auto& t : x.terms) j["terms"].push_back(write_struct(t));
          j["mean"] = write_struct(x.mean);
          j["target"] = format(x.target);
        } else if constexpr (std::is_same_v<T, NonSosObstruction>) {
          j["vars"] = vars_json(x.poly.vars());
          j["poly"] = format(x.poly);
          j["support"] = json::array();
          for (const auto& p : x.support.points) j["support"].push_back(write_point(p));
          j["beta"] = write_point(x.beta);
          j["corner"] = write_point(x.corner);
          j["coefficient"] = to_string(x.coefficient);
          j["pair_audit"] = json::array();
          for (const auto& [a, b] : x.pair_audit) j["pair_audit"].push_back({write_point(a), write_point(b)});
        } else if constexpr (std::is_same_v<T, ConeCertFile>) {
          j["vars"] = vars_json(*x.vars);
          j["trunc"] = x.f.trunc();
          j["gens"] = json::array();
          if (x.source) {
            j["change"] = "hat";
            j["source_vars"] = vars_json(*x.source->vars);
            for (const auto& g : x.source->gens) j["gens"].push_back(format(g));
            j["f"] = format(x.source->f);
          } else {
            for (const auto& g : x.gens) j["gens"].push_back(format(g.body()));
            j["f"] = format(x.f.body());
          }
          j["target"] = write_point(x.cert.target);
          j["products"] = json::array();
          for (const auto& ps : x.cert.products) {
            json sup = json::array();
            for (const auto& m : ps.support) sup.push_back(write_point(m));
            j["products"].push_back({{"i", ps.i}, {"j", ps.j}, {"support", sup}});
          }
        } else {
          j["vars"] = vars_json(*x.vars);
          j["ideal"] = json::array();
          for (const auto& g : x.ideal) j["ideal"].push_back(format(g));
          j["f"] = format(x.f);
          j["point"] = write_point(x.point);
          static const char* methods[] = {"localized", "order_bound", "cone"};
          j["method"] = methods[static_cast<int>(x.method)];
          if (x.method == NonMembershipMethod::cone) {
            j["trunc"] = x.trunc;
            j["cone_target"] = write_point(x.cone_target);
          }
          j["density"] = json::array();
          for (const auto& d : x.density) j["density"].push_back({{"point", write_point(d.point)}, {"rank", d.expected_rank}});
        }
      },
      c);
  return j.dump(1) + "\n";
}

namespace {

void add_verdict(CertOutcome& out, const Verdict& v) {
  out.ok = v.ok;
  if (!v.reason.empty()) out.lines.push_back("reason: " + v.reason);
  if (v.residual) out.lines.push_back("residual: " + format(*v.residual));
}

}  // namespace

CertOutcome verify_certificate(const AnyCert& c, const GroebnerOptions& options) {
  CertOutcome out;
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, SosCert>) {
          add_verdict(out, verify_sos(x));
        } else if constexpr (std::is_same_v<T, AmGmCert>) {
          add_verdict(out, verify_amgm(x));
        } else if constexpr (std::is_same_v<T, NonSosObstruction>) {
          add_verdict(out, verify_non_sos(x));
          if (out.ok)
            out.lines.push_back("corner " + format_monomial(x.corner, x.poly.vars()) + " coefficient " +
                                to_string(x.coefficient));
        } else if constexpr (std::is_same_v<T, ConeCertFile>) {
          const ConeReport r = verify_cone_obstruction(x.cert, x.gens, x.f);
          add_verdict(out, r.verdict);
          out.lines.push_back("target " + format_monomial(x.cert.target, *x.vars) + " coefficient " +
                              to_string(r.target_coefficient));
          out.lines.push_back(std::string("stored supports ") + (r.stored_supports_match ? "match" : "differ (ignored)"));
        } else {
          const BadPointReport r = verify_bad_point(x, options);
          out.ok = r.all_passed;
          for (const auto& h : r.checks) out.lines.push_back((h.passed ? "pass " : "FAIL ") + h.name + ": " + h.detail);
          out.lines.push_back("conclusion: " + r.conclusion);
        }
      },
      c);
  return out;
}

}  // namespace badpoints
