#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <fstream>
#include <json.hpp>
#include <regex>
#include <set>

#include "badpoints/error.hpp"
#include "badpoints/paperbook.hpp"

using namespace badpoints;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = BADPOINTS_SOURCE_DIR;

const Catalog& catalog() {
  static const Catalog c = Catalog::load(kSource / "data");
  return c;
}

std::string kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return "none";
}

fs::path scratch_copy(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("badpoints_" + name);
  fs::remove_all(dir);
  fs::copy(kSource / "data", dir, fs::copy_options::recursive);
  return dir;
}

}  // namespace

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("catalog loads every object and resolves references") {
  const Catalog& c = catalog();
  CHECK(c.ids().size() >= 18);
  CHECK(c.contains("f1"));
  CHECK_FALSE(c.contains("nope"));
  CHECK(format(c.poly("f1")) == "u^5 + u*v^3 - 3*u^2*v*w + w^3");
  CHECK(c.ideal("I_C").order.has_value());
  CHECK(c.map("psi").images.size() == 3);
  CHECK(c.series("alpha").trunc() == 40);

  auto xyz = make_vars({"x", "y", "z"});
  CHECK(c.expr("{f1|psi}", xyz) == c.poly("f_cxbad").with_vars(xyz));
  CHECK(c.expr("y^6*{f1|phi} - y^6*{f1|phi}", xyz).is_zero());
  CHECK(c.derived("alpha_constant") == "\"3/4\"");

  CHECK(kind_of([&] { c.poly("I_C"); }) == "catalog_error");
  CHECK(kind_of([&] { c.poly("missing"); }) == "unknown_object");
  CHECK(kind_of([&] { c.derived("missing"); }) == "unknown_object");
  CHECK(kind_of([&] { c.expr("{f1", xyz); }) == "parse_error");
  // f1 lives in u, v, w; without the map its variables are unknown here.
  CHECK(kind_of([&] { c.expr("{f1}", xyz); }) == "parse_error");
}

TEST_CASE("a tampered object file is refused") {
  const fs::path dir = scratch_copy("tamper");
  std::ofstream(dir / "objects" / "f1.poly", std::ios::app) << "# edited\n";
  CHECK(kind_of([&] { Catalog::load(dir); }) == "hash_mismatch");
  fs::remove_all(dir);
}

TEST_CASE("data directory resolution") {
  CHECK(resolve_data_dir("/some/where") == fs::path("/some/where"));
  ::setenv("BADPOINTS_DATA", "/from/env", 1);
  CHECK(resolve_data_dir() == fs::path("/from/env"));
  ::unsetenv("BADPOINTS_DATA");
  CHECK(resolve_data_dir() == fs::path(BADPOINTS_DEFAULT_DATA_DIR));
}

TEST_CASE("manifest validation") {
  const auto claims = load_claims(kSource / "data");
  std::set<std::string> ids;
  for (const auto& c : claims) ids.insert(c.id);
  CHECK(ids.size() == claims.size());

  const fs::path dir = scratch_copy("manifest");
  std::ofstream(dir / "claims.json") << R"({"claims": [{"id": "a", "about": "x", "op": "identity"},
                                                      {"id": "a", "about": "y", "op": "identity"}]})";
  CHECK(kind_of([&] { load_claims(dir); }) == "manifest_error");
  std::ofstream(dir / "claims.json") << R"({"claims": [{"id": "a", "op": "identity"}]})";
  CHECK(kind_of([&] { load_claims(dir); }) == "manifest_error");
  fs::remove_all(dir);
}

TEST_CASE("claim runner: selection, failures and determinism") {
  const Catalog& c = catalog();
  const auto claims = load_claims(kSource / "data");
  CHECK(kind_of([&] { run_claims(c, claims, {"no-such-claim"}); }) == "unknown_claim");

  const std::vector<std::string> pick{"symboleq", "symb-membership", "cxbad-pullback", "cxbad-hessian-det",
                                      "motzkin-classical", "biraffine-demo", "adic-roundtrip"};
  const Report one = run_claims(c, claims, pick, 1);
  const Report many = run_claims(c, claims, pick, 4);
  CHECK(one.all_passed());
  CHECK(one.results.size() == pick.size());
  CHECK(format_report(one) == format_report(many));
  CHECK(format_report_machine(one) == format_report_machine(many));
  // Manifest order, not filter order.
  const Report rev = run_claims(c, claims, {"cxbad-pullback", "symboleq"}, 2);
  CHECK(rev.results[0].id == "symboleq");

  // A wrong expectation fails the claim and is counted.
  ClaimSpec wrong{"wrong", "deliberately false", "identity",
                  R"({"id": "wrong", "about": "", "op": "identity", "vars": ["u", "v", "w"], "lhs": "{f1}", "rhs": "u^5"})"};
  const Report bad = run_claims(c, {wrong}, {"all"}, 1);
  CHECK(bad.failed == 1);
  CHECK_FALSE(bad.all_passed());
  CHECK(format_report(bad).find("FAIL wrong") == 0);

  ClaimSpec broken{"broken", "", "nonsense", R"({"id": "broken", "about": "", "op": "nonsense"})"};
  const ClaimResult br = run_claim(c, broken);
  CHECK_FALSE(br.passed);
  CHECK(br.details.back().find("manifest_error") != std::string::npos);

  const auto doc = nlohmann::json::parse(format_report_machine(one));
  CHECK(doc["passed"] == pick.size());
  CHECK(doc["claims"].size() == pick.size());
}

TEST_CASE("cheap shipped certificates match their rebuilt form") {
  const Catalog& c = catalog();
  for (const char* name : {"cxbad_amgm", "g_sos", "motzkin_nonsos", "motzkin_sos_attempt", "motzkin4_w2_nonsos",
                           "motzkin4_series_sos", "bad_point_symb", "bad_point_cxbad"}) {
    INFO(name);
    CHECK(read_file(kSource / "data" / "certs" / (std::string(name) + ".json")) == build_certificate_text(c, name));
  }
  const auto names = shipped_certificate_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
  for (const auto& n : names) CHECK(fs::exists(kSource / "data" / "certs" / (n + ".json")));
  CHECK(kind_of([&] { build_certificate_text(c, "nope"); }) == "unknown_certificate");
}

TEST_CASE("coverage table names every claim and only existing ones") {
  const auto claims = load_claims(kSource / "data");
  std::set<std::string> ids;
  for (const auto& c : claims) ids.insert(c.id);

  std::ifstream in(kSource / "docs" / "claims.md");
  REQUIRE(in);
  std::set<std::string> covered;
  std::size_t rows = 0;
  const std::regex id_re("`([a-zA-Z0-9-]+)`");
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("| ", 0) != 0 || line.rfind("| statement", 0) == 0) continue;
    const auto bar = line.rfind(" | ");
    REQUIRE(bar != std::string::npos);
    const std::string cell = line.substr(bar + 3);
    std::size_t in_row = 0;
    for (std::sregex_iterator it(cell.begin(), cell.end(), id_re), end; it != end; ++it) {
      const std::string id = (*it)[1];
      INFO(id);
      CHECK(ids.count(id) == 1);
      covered.insert(id);
      ++in_row;
    }
    INFO(line);
    CHECK(in_row > 0);
    ++rows;
  }
  CHECK(rows >= 10);
  for (const auto& id : ids) {
    INFO(id);
    CHECK(covered.count(id) == 1);
  }
}
