// Command-line front end. Every subcommand parses its inputs, makes one
// library call and prints the result; exit codes: 0 pass, 1 verified
// failure, 2 usage or input error, 3 step budget exhausted.

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "badpoints/cert_io.hpp"
#include "badpoints/error.hpp"
#include "badpoints/files.hpp"
#include "badpoints/newton.hpp"
#include "badpoints/paperbook.hpp"

using namespace badpoints;
using json = nlohmann::json;

namespace {

bool machine = false;

struct PolyInput {
  std::string text;
  std::string file;
  std::vector<std::string> vars;

  void attach(CLI::App* app, const char* what = "polynomial") {
    auto* t = app->add_option("--poly", text, std::string(what) + " text");
    auto* f = app->add_option("--poly-file", file, std::string(what) + " file (.poly)");
    t->excludes(f);
    app->add_option("--vars", vars, "variables of --poly");
  }

  Poly get() const {
    if (!file.empty()) return parse_poly_file(read_file(file)).poly;
    if (text.empty()) throw Error("usage", "give --poly or --poly-file");
    if (vars.empty()) throw Error("usage", "--poly needs --vars");
    return parse_poly(text, make_vars(vars));
  }

  // Text is read in the variables of an ideal when --vars is absent.
  Poly get(const VarsPtr& fallback) const {
    if (file.empty() && vars.empty() && !text.empty()) return parse_poly(text, fallback);
    return get();
  }
};

std::vector<GaussRat> parse_point(const std::vector<std::string>& coords) {
  std::vector<GaussRat> p;
  for (const auto& c : coords) p.push_back(parse_gauss(c));
  return p;
}

// "0,0,i" -> point
std::vector<GaussRat> parse_point_csv(const std::string& s) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parse_point(parts);
}

std::string point_text(const std::vector<GaussRat>& p) {
  std::string s = "(";
  for (std::size_t k = 0; k < p.size(); ++k) s += (k ? ", " : "") + to_string(p[k]);
  return s + ")";
}

std::vector<std::string> formatted(const std::vector<Poly>& ps) {
  std::vector<std::string> out;
  for (const auto& p : ps) out.push_back(format(p));
  return out;
}

IdealFile load_ideal(const std::string& path) { return parse_ideal_file(read_file(path)); }

MonOrder pick_order(const std::string& flag, const IdealFile& f) {
  if (!flag.empty()) return MonOrder::parse(flag);
  return f.order.value_or(MonOrder::grevlex());
}

Ideal with_power(const IdealFile& f, unsigned power) {
  return power <= 1 ? f.ideal() : ideal_power(f.ideal(), power);
}

void emit(const json& doc, const std::string& text) {
  if (machine)
    std::cout << doc.dump(1) << "\n";
  else
    std::cout << text;
}

TruncSeries series_arg(const std::string& text, const std::vector<std::string>& vars, std::uint64_t n) {
  if (vars.empty()) throw Error("usage", "series text needs --vars");
  return TruncSeries(parse_poly(text, make_vars(vars)).truncated(n), n);
}

int verify_file(const std::string& path, const std::string& kind) {
  const AnyCert c = parse_certificate(read_file(path));
  if (!kind.empty() && certificate_kind(c) != kind)
    throw Error("usage", "expected a '" + kind + "' certificate, got '" + certificate_kind(c) + "'");
  const CertOutcome out = verify_certificate(c);
  std::string text;
  for (const auto& l : out.lines) text += l + "\n";
  text += out.ok ? "verified\n" : "rejected\n";
  emit({{"kind", certificate_kind(c)}, {"ok", out.ok}, {"lines", out.lines}}, text);
  return out.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computer algebra for positive semidefinite polynomials and their bad points"};
  app.require_subcommand(1);
  std::string format_flag = "text";
  app.add_option("--format", format_flag, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  std::function<int()> action;

  // gb
  std::string ideal_path, order_flag;
  auto* gb = app.add_subcommand("gb", "reduced Groebner basis of an ideal file");
  gb->add_option("ideal", ideal_path, ".ideal file")->required();
  gb->add_option("--order", order_flag, "grevlex, lex or elimination(k)");
  gb->callback([&] {
    action = [&] {
      const IdealFile f = load_ideal(ideal_path);
      const MonOrder o = pick_order(order_flag, f);
      const Ideal g = groebner(f.ideal(), o);
      IdealFile out{f.vars, g.basis().basis, o};
      emit({{"order", o.name()}, {"vars", *f.vars}, {"basis", formatted(out.gens)}}, format_ideal_file(out));
      return 0;
    };
  });

  // member
  PolyInput member_poly;
  unsigned power = 1;
  auto* member = app.add_subcommand("member", "ideal membership with cofactors");
  member->add_option("--ideal", ideal_path, ".ideal file")->required();
  member->add_option("--power", power, "test against I^k")->check(CLI::PositiveNumber);
  member_poly.attach(member);
  member->callback([&] {
    action = [&] {
      const IdealFile f = load_ideal(ideal_path);
      const Ideal g = groebner(with_power(f, power), MonOrder::grevlex());
      const MembershipWitness w = normal_form(member_poly.get(f.vars), g);
      std::string text = w.is_member() ? "member\n" : "not a member\nremainder " + format(w.remainder) + "\n";
      emit({{"member", w.is_member()}, {"remainder", format(w.remainder)}, {"cofactors", formatted(w.cofactors)},
            {"basis", formatted(g.basis().basis)}},
           text);
      return w.is_member() ? 0 : 1;
    };
  });

  // quotient
  PolyInput quot_poly;
  auto* quotient = app.add_subcommand("quotient", "colon ideal (I : f)");
  quotient->add_option("--ideal", ideal_path, ".ideal file")->required();
  quotient->add_option("--power", power, "use I^k")->check(CLI::PositiveNumber);
  quot_poly.attach(quotient);
  quotient->callback([&] {
    action = [&] {
      const IdealFile f = load_ideal(ideal_path);
      const Ideal q = ideal_quotient(with_power(f, power), quot_poly.get(f.vars));
      IdealFile out{f.vars, q.basis().basis, q.basis().order};
      emit({{"vars", *f.vars}, {"basis", formatted(out.gens)}}, format_ideal_file(out));
      return 0;
    };
  });

  // member-local
  PolyInput local_poly;
  std::vector<std::string> point;
  auto* member_local = app.add_subcommand("member-local", "membership after localizing at a point of Q(i)^n");
  member_local->add_option("--ideal", ideal_path, ".ideal file")->required();
  member_local->add_option("--power", power, "test against I^k")->check(CLI::PositiveNumber);
  member_local->add_option("--point", point, "coordinates, e.g. 0 0 i")->required();
  local_poly.attach(member_local);
  member_local->callback([&] {
    action = [&] {
      const IdealFile f = load_ideal(ideal_path);
      const auto pt = parse_point(point);
      const LocalMembership lm = member_localized(local_poly.get(f.vars), with_power(f, power), pt);
      std::vector<std::string> ev;
      for (const auto& e : lm.evaluations) ev.push_back(to_string(e));
      std::string text = std::string(lm.member ? "member" : "not a member") + " at " + point_text(pt) + "\n";
      text += "quotient basis:\n";
      for (const auto& g : lm.quotient.basis().basis) text += "  " + format(g) + "\n";
      if (lm.witness) text += "witness " + format(*lm.witness) + "\n";
      emit({{"member", lm.member}, {"quotient", formatted(lm.quotient.basis().basis)}, {"evaluations", ev},
            {"witness", lm.witness ? format(*lm.witness) : ""}},
           text);
      return lm.member ? 0 : 1;
    };
  });

  // dim
  auto* dim = app.add_subcommand("dim", "Krull dimension of the quotient ring");
  dim->add_option("ideal", ideal_path, ".ideal file")->required();
  dim->callback([&] {
    action = [&] {
      const std::size_t d = dimension(groebner(load_ideal(ideal_path).ideal(), MonOrder::grevlex()));
      emit({{"dimension", d}}, std::to_string(d) + "\n");
      return 0;
    };
  });

  // hessian
  PolyInput hess_poly;
  std::vector<std::string> rows, cols;
  std::string modulo;
  auto* hess = app.add_subcommand("hessian", "Hessian (or a minor of it), its determinant, optionally reduced modulo an ideal");
  hess_poly.attach(hess);
  hess->add_option("--rows", rows, "row variables of the minor");
  hess->add_option("--cols", cols, "column variables of the minor");
  hess->add_option("--modulo", modulo, ".ideal file to reduce entries and determinant");
  hess->callback([&] {
    action = [&] {
      const Poly p = hess_poly.get();
      std::vector<std::string> r = rows.empty() ? p.vars() : rows;
      std::vector<std::string> c = cols.empty() ? r : cols;
      if (r.size() != c.size()) throw Error("usage", "--rows and --cols must have the same length");
      std::vector<std::vector<Poly>> m;
      for (const auto& a : r) {
        m.emplace_back();
        for (const auto& b : c) m.back().push_back(derivative(derivative(p, a), b));
      }
      Poly det = determinant(m);
      std::optional<Ideal> gbm;
      if (!modulo.empty()) {
        gbm = groebner(load_ideal(modulo).ideal(), MonOrder::grevlex());
        for (auto& row : m)
          for (auto& e : row) e = normal_form(e, *gbm).remainder;
      }
      json entries = json::array();
      std::string text;
      for (const auto& row : m) {
        entries.push_back(formatted(row));
        for (std::size_t k = 0; k < row.size(); ++k) text += (k ? " | " : "") + format(row[k]);
        text += "\n";
      }
      json doc{{"entries", entries}, {"det", format(det)}};
      text += "det " + format(det) + "\n";
      if (gbm) {
        const Poly rd = determinant(m);
        const Poly nf = normal_form(det, *gbm).remainder;
        doc["reduced_det"] = format(rd);
        doc["det_normal_form"] = format(nf);
        text += "det of reduced entries " + format(rd) + "\ndet normal form " + format(nf) + "\n";
      }
      emit(doc, text);
      return 0;
    };
  });

  // certificate verifiers
  std::string cert_path;
  struct Verifier {
    const char* name;
    const char* kind;
    const char* help;
  };
  for (const Verifier v : {Verifier{"sos-verify", "sos", "verify a sum-of-squares certificate"},
                           Verifier{"amgm-verify", "amgm", "verify an AM-GM certificate"},
                           Verifier{"cone-verify", "cone", "verify a monomial-cone obstruction"},
                           Verifier{"bad-point", "bad_point", "verify a bad-point certificate and print the hypothesis report"}}) {
    auto* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("certificate", cert_path, "certificate JSON")->required();
    const std::string kind = v.kind;
    sub->callback([&, kind] { action = [&, kind] { return verify_file(cert_path, kind); }; });
  }

  // non-sos
  PolyInput nonsos_poly;
  std::string write_path;
  auto* nonsos = app.add_subcommand("non-sos", "search for a Newton polytope obstruction to being a sum of squares");
  nonsos_poly.attach(nonsos);
  nonsos->add_option("--write", write_path, "write the obstruction certificate here");
  nonsos->callback([&] {
    action = [&] {
      const Poly p = nonsos_poly.get();
      const auto obs = find_non_sos_obstruction(p);
      if (!obs) {
        emit({{"obstruction", false}}, "no obstruction\n");
        return 1;
      }
      const std::string corner = format_monomial(obs->corner, p.vars());
      if (!write_path.empty()) {
        std::ofstream out(write_path, std::ios::binary);
        out << write_certificate(AnyCert(*obs));
        if (!out) throw Error("io_error", "cannot write " + write_path);
      }
      emit({{"obstruction", true}, {"corner", corner}, {"coefficient", to_string(obs->coefficient)},
            {"beta", obs->beta}, {"half_support", std::vector<Point>(obs->support.points.begin(), obs->support.points.end())}},
           "obstruction at " + corner + " with coefficient " + to_string(obs->coefficient) + "\n");
      return 0;
    };
  });

  // adic
  std::string g_text;
  std::vector<std::string> series_vars, scales;
  std::uint64_t trunc = 12;
  std::size_t rank = 1;
  auto* adic = app.add_subcommand("adic", "rewrite sum x_i^2 + g as sum (x_i + a_i)^2 + b");
  adic->add_option("--g", g_text, "g, of order at least 3")->required();
  adic->add_option("--vars", series_vars, "variables")->required();
  adic->add_option("--r", rank, "number of square variables")->check(CLI::PositiveNumber);
  adic->add_option("--trunc", trunc, "truncation degree N");
  adic->add_option("--scales", scales, "positive rational scales, one per square");
  adic->callback([&] {
    action = [&] {
      const TruncSeries g = series_arg(g_text, series_vars, trunc);
      std::vector<Rat> sc(rank, Rat(1));
      if (!scales.empty()) {
        if (scales.size() != rank) throw Error("usage", "--scales needs one value per square");
        for (std::size_t i = 0; i < rank; ++i) sc[i] = parse_rat(scales[i]);
      }
      const AdicResult res = adic_decompose(g, rank, sc);
      std::string text;
      json a = json::array();
      for (std::size_t i = 0; i < res.a.size(); ++i) {
        text += "a" + std::to_string(i + 1) + " = " + format(res.a[i].body()) + "\n";
        a.push_back(format(res.a[i].body()));
      }
      text += "b = " + format(res.b.body()) + "\nexact through degree " + std::to_string(res.verified_to) + "\n";
      emit({{"a", a}, {"b", format(res.b.body())}, {"verified_to", res.verified_to}}, text);
      return 0;
    };
  });

  // series-root
  std::string s_text;
  unsigned root_n = 2;
  auto* sroot = app.add_subcommand("series-root", "n-th root of a series with constant term 1");
  sroot->add_option("--series", s_text, "series text")->required();
  sroot->add_option("--vars", series_vars, "variables")->required();
  sroot->add_option("--trunc", trunc, "truncation degree N");
  sroot->add_option("--n", root_n, "root index")->check(CLI::PositiveNumber);
  sroot->callback([&] {
    action = [&] {
      const TruncSeries r = nth_root_unit(series_arg(s_text, series_vars, trunc), root_n);
      emit({{"trunc", r.trunc()}, {"series", format(r.body())}}, format_series(r));
      return 0;
    };
  });

  // revert
  auto* revert = app.add_subcommand("revert", "compositional inverse of a univariate series t + ...");
  revert->add_option("--series", s_text, "series text")->required();
  revert->add_option("--vars", series_vars, "the variable")->required();
  revert->add_option("--trunc", trunc, "truncation degree N");
  revert->callback([&] {
    action = [&] {
      const TruncSeries r = reversion(series_arg(s_text, series_vars, trunc));
      emit({{"trunc", r.trunc()}, {"series", format(r.body())}}, format_series(r));
      return 0;
    };
  });

  // sample
  PolyInput sample_poly;
  std::vector<std::string> box;
  std::string step = "1/2";
  auto* sample = app.add_subcommand("sample", "exact grid search for a negative value");
  sample_poly.attach(sample);
  sample->add_option("--box", box, "lo:hi per variable, or one lo:hi for all")->required();
  sample->add_option("--step", step, "grid step");
  sample->callback([&] {
    action = [&] {
      const Poly p = sample_poly.get();
      GridBox gbx;
      gbx.step = parse_rat(step);
      for (const auto& b : box) {
        const auto colon = b.find(':');
        if (colon == std::string::npos) throw Error("usage", "--box entries look like lo:hi");
        gbx.bounds.emplace_back(parse_rat(b.substr(0, colon)), parse_rat(b.substr(colon + 1)));
      }
      if (gbx.bounds.size() == 1) gbx.bounds.assign(p.arity(), gbx.bounds[0]);
      const SampleResult s = sample_nonnegativity(p, gbx);
      std::vector<GaussRat> pt(s.point.begin(), s.point.end());
      std::vector<std::string> coords;
      for (const auto& c : s.point) coords.push_back(to_string(c));
      const std::string text = s.counterexample ? "counterexample at " + point_text(pt) + " value " + to_string(s.value) + "\n"
                                                : "no counterexample on " + std::to_string(s.evaluated) + " points\n";
      emit({{"counterexample", s.counterexample}, {"point", coords}, {"value", s.counterexample ? to_string(s.value) : ""},
            {"evaluated", s.evaluated}},
           text);
      return s.counterexample ? 1 : 0;
    };
  });

  // avoid-map
  std::vector<std::string> avoid, keep, map_vars;
  auto* avoid_map = app.add_subcommand("avoid-map", "birational map whose image misses given points");
  avoid_map->add_option("--vars", map_vars, "variables")->required();
  avoid_map->add_option("--avoid", avoid, "points to avoid, comma separated coordinates")->required();
  avoid_map->add_option("--keep", keep, "points where the map must be defined");
  avoid_map->callback([&] {
    action = [&] {
      const VarsPtr v = make_vars(map_vars);
      std::vector<std::vector<GaussRat>> av, kp;
      for (const auto& s : avoid) av.push_back(parse_point_csv(s));
      for (const auto& s : keep) kp.push_back(parse_point_csv(s));
      const BirationalAvoid m = birational_avoid(v, av, kp);
      const Verdict vd = verify_birational_avoid(m, av, kp);
      std::string text;
      for (std::size_t k = 0; k < m.map.size(); ++k) text += (*v)[k] + " -> " + format(m.map[k]) + "\n";
      text += vd.ok ? "verified\n" : "rejected: " + vd.reason + "\n";
      emit({{"map", formatted(m.map)}, {"ok", vd.ok}, {"reason", vd.reason}}, text);
      return vd.ok ? 0 : 1;
    };
  });

  // reproduce
  std::vector<std::string> claims{"all"};
  std::string data_dir;
  unsigned jobs = 1;
  auto* reproduce = app.add_subcommand("reproduce", "run the claim suite over the cataloged objects");
  reproduce->add_option("--claims", claims, "claim ids, or all");
  reproduce->add_option("--jobs", jobs, "claims run concurrently")->check(CLI::PositiveNumber);
  reproduce->add_option("--data", data_dir, "data directory (default: $BADPOINTS_DATA or the source tree)");
  reproduce->callback([&] {
    action = [&] {
      const auto dir = resolve_data_dir(data_dir);
      const Catalog cat = Catalog::load(dir);
      const Report rep = run_claims(cat, load_claims(dir), claims, jobs);
      std::cout << (machine ? format_report_machine(rep) : format_report(rep));
      return rep.all_passed() ? 0 : 1;
    };
  });

  // certs: regenerate or check the shipped certificate files
  bool write_certs = false;
  auto* certs = app.add_subcommand("certs", "compare (or rewrite) the shipped certificates with ones rebuilt from the catalog");
  certs->add_option("--data", data_dir, "data directory");
  certs->add_flag("--write", write_certs, "rewrite the files");
  certs->callback([&] {
    action = [&] {
      const auto dir = resolve_data_dir(data_dir);
      const Catalog cat = Catalog::load(dir);
      int status = 0;
      for (const auto& name : shipped_certificate_names()) {
        const auto path = dir / "certs" / (name + ".json");
        const std::string text = build_certificate_text(cat, name);
        if (write_certs) {
          std::ofstream(path, std::ios::binary) << text;
          std::cout << "wrote " << name << "\n";
        } else {
          std::string have;
          try {
            have = read_file(path);
          } catch (const Error&) {
          }
          const bool same = have == text;
          std::cout << (same ? "same    " : "differs ") << name << "\n";
          if (!same) status = 1;
        }
      }
      return status;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  machine = format_flag == "machine";
  try {
    return action ? action() : 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 2;
  }
}
