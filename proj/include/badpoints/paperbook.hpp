#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "badpoints/cert_io.hpp"
#include "badpoints/files.hpp"

namespace badpoints {

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

using Object = std::variant<Poly, IdealFile, PolyMap, TruncSeries>;

// Named objects loaded from <data>/catalog.json. Every file is checked
// against its frozen hash before parsing.
class Catalog {
 public:
  static Catalog load(const std::filesystem::path& data_dir);

  const std::filesystem::path& dir() const { return dir_; }
  std::vector<std::string> ids() const;
  bool contains(const std::string& id) const { return objects_.count(id) != 0; }

  const Poly& poly(const std::string& id) const;
  const IdealFile& ideal(const std::string& id) const;
  const PolyMap& map(const std::string& id) const;
  const TruncSeries& series(const std::string& id) const;

  // Polynomial text in which {name} stands for a cataloged polynomial and
  // {name|map} for its pull-back along a cataloged map.
  Poly expr(std::string_view text, const VarsPtr& vars) const;

  // Oracle values frozen in <data>/derived.json, as JSON text.
  std::string derived(const std::string& key) const;

 private:
  std::filesystem::path dir_;
  std::map<std::string, Object> objects_;
  std::map<std::string, std::string> derived_;
};

// Where to look for data: the explicit argument, else BADPOINTS_DATA, else
// the build-time default.
std::filesystem::path resolve_data_dir(const std::string& explicit_dir = "");

struct ClaimSpec {
  std::string id;
  std::string about;
  std::string op;
  std::string args_json;  // the full manifest entry
};

std::vector<ClaimSpec> load_claims(const std::filesystem::path& data_dir);

struct ClaimResult {
  std::string id;
  std::string about;
  bool passed = false;
  std::vector<std::string> details;
};

struct Report {
  std::vector<ClaimResult> results;
  std::size_t passed = 0;
  std::size_t failed = 0;
  bool all_passed() const { return failed == 0; }
};

// Runs the selected claims ("all" or ids), `jobs` at a time. Results keep
// manifest order whatever the thread count. Unknown ids raise Error("unknown_claim").
Report run_claims(const Catalog& catalog, const std::vector<ClaimSpec>& claims, const std::vector<std::string>& filter,
                  unsigned jobs = 1);
ClaimResult run_claim(const Catalog& catalog, const ClaimSpec& claim);

std::string format_report(const Report& r);
std::string format_report_machine(const Report& r);

// Certificates shipped in <data>/certs, rebuilt from the catalog. The claim
// suite checks shipped files against these byte for byte.
std::vector<std::string> shipped_certificate_names();
std::string build_certificate_text(const Catalog& catalog, const std::string& name);

}  // namespace badpoints
