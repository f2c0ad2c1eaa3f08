#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "badpoints/groebner.hpp"
#include "badpoints/poly.hpp"
#include "badpoints/series.hpp"

namespace badpoints {

// Object files share a `vars: x y z` first line. Lines starting with '#' are
// comments anywhere after it. Parse errors report file line numbers.

// .poly: the header, then one polynomial that may span several lines.
struct PolyFile {
  Poly poly;
};

// .ideal: the header, an optional `order: grevlex|lex|elimination(k)` line, then one
// generator per line.
struct IdealFile {
  VarsPtr vars;
  std::vector<Poly> gens;
  std::optional<MonOrder> order;

  Ideal ideal() const { return Ideal(vars, gens); }
};

// .map: the header (source variables), `target: u v w`, then one line
// `u = <polynomial in the source variables>` per target variable, in order.
struct PolyMap {
  VarsPtr source;
  VarsPtr target;
  std::vector<Poly> images;

  Poly pull_back(const Poly& p) const;
};

// .series: the header, then the `trunc: N` series text.

VarsPtr parse_vars_header(std::string_view line, std::size_t line_no);

PolyFile parse_poly_file(std::string_view text);
IdealFile parse_ideal_file(std::string_view text);
PolyMap parse_map_file(std::string_view text);
TruncSeries parse_series_file(std::string_view text);

std::string format_poly_file(const Poly& p);
std::string format_ideal_file(const IdealFile& f);
std::string format_map_file(const PolyMap& m);
std::string format_series_file(const TruncSeries& s);

std::string read_file(const std::filesystem::path& path);

}  // namespace badpoints
