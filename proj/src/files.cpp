#include "badpoints/files.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "badpoints/error.hpp"

namespace badpoints {

namespace {

struct Line {
  std::size_t no;
  std::string text;
};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    const auto raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    ++no;
    std::string t = trim(raw);
    if (!t.empty() && t[0] != '#') out.push_back({no, std::move(t)});
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  return out;
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

Poly parse_at(const std::string& text, const VarsPtr& vars, std::size_t line_no, std::size_t col_offset = 0) {
  try {
    return parse_poly(text, vars);
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    const auto colon = msg.find(": ");
    throw ParseError(line_no + e.line() - 1, e.column() + (e.line() == 1 ? col_offset : 0),
                     colon == std::string::npos ? msg : msg.substr(colon + 2));
  }
}

std::pair<VarsPtr, std::vector<Line>> header_and_body(std::string_view text) {
  auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty file; expected 'vars:' header");
  VarsPtr vars = parse_vars_header(lines.front().text, lines.front().no);
  lines.erase(lines.begin());
  return {std::move(vars), std::move(lines)};
}

std::string vars_line(const VarList& v) {
  std::string s = "vars:";
  for (const auto& name : v) s += " " + name;
  return s + "\n";
}

}  // namespace

VarsPtr parse_vars_header(std::string_view line, std::size_t line_no) {
  const std::string t = trim(line);
  if (t.rfind("vars:", 0) != 0) throw ParseError(line_no, 1, "expected 'vars:' header");
  auto names = words(std::string_view(t).substr(5));
  if (names.empty()) throw ParseError(line_no, 6, "no variables declared");
  std::set<std::string> seen;
  for (const auto& n : names)
    if (!seen.insert(n).second) throw ParseError(line_no, 6, "duplicate variable '" + n + "'");
  return make_vars(std::move(names));
}

PolyFile parse_poly_file(std::string_view text) {
  auto [vars, body] = header_and_body(text);
  if (body.empty()) throw ParseError(1, 1, "missing polynomial after header");
  // Keep relative line numbers by padding skipped lines.
  std::string joined;
  std::size_t prev = body.front().no;
  for (const auto& l : body) {
    joined.append(l.no - prev, '\n');
    joined += l.text;
    prev = l.no;
  }
  return {parse_at(joined, vars, body.front().no)};
}

IdealFile parse_ideal_file(std::string_view text) {
  auto [vars, body] = header_and_body(text);
  IdealFile f{vars, {}, std::nullopt};
  for (const auto& l : body) {
    if (l.text.rfind("order:", 0) == 0) {
      if (f.order || !f.gens.empty()) throw ParseError(l.no, 1, "'order:' must directly follow the header");
      try {
        f.order = MonOrder::parse(trim(l.text.substr(6)));
      } catch (const Error& e) {
        throw ParseError(l.no, 8, e.what());
      }
      continue;
    }
    f.gens.push_back(parse_at(l.text, vars, l.no));
  }
  if (f.gens.empty()) throw ParseError(1, 1, "ideal file has no generators");
  return f;
}

Poly PolyMap::pull_back(const Poly& p) const {
  if (p.vars() != *target) throw ArityMismatch(p.arity(), target->size(), "map target variables");
  return substitute(p.with_vars(target), images);
}

PolyMap parse_map_file(std::string_view text) {
  auto [source, body] = header_and_body(text);
  if (body.empty() || body.front().text.rfind("target:", 0) != 0)
    throw ParseError(body.empty() ? 1 : body.front().no, 1, "expected 'target:' line");
  auto names = words(std::string_view(body.front().text).substr(7));
  if (names.empty()) throw ParseError(body.front().no, 8, "no target variables");
  VarsPtr target = make_vars(names);
  PolyMap m{source, target, {}};
  for (std::size_t k = 1; k < body.size(); ++k) {
    const Line& l = body[k];
    const auto eq = l.text.find('=');
    if (eq == std::string::npos) throw ParseError(l.no, 1, "expected 'name = polynomial'");
    const std::string lhs = trim(std::string_view(l.text).substr(0, eq));
    const std::size_t idx = m.images.size();
    if (idx >= names.size()) throw ParseError(l.no, 1, "more images than target variables");
    if (lhs != names[idx]) throw ParseError(l.no, 1, "expected image of '" + names[idx] + "', got '" + lhs + "'");
    m.images.push_back(parse_at(l.text.substr(eq + 1), source, l.no, eq + 1));
  }
  if (m.images.size() != names.size()) throw ParseError(body.back().no, 1, "missing images");
  return m;
}

TruncSeries parse_series_file(std::string_view text) {
  const auto lines = content_lines(text);
  if (lines.empty()) throw ParseError(1, 1, "empty file; expected 'vars:' header");
  VarsPtr vars = parse_vars_header(lines.front().text, lines.front().no);
  // The series grammar numbers its own lines; shift by the header position.
  std::size_t header_end = 0;
  for (std::size_t n = 0; n < lines.front().no; ++n) header_end = text.find('\n', header_end) + 1;
  const std::string_view rest = text.substr(std::min(header_end, text.size()));
  try {
    return parse_series(rest, vars);
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    throw ParseError(e.line() + lines.front().no, e.column(), msg.substr(msg.find(": ") + 2));
  }
}

std::string format_poly_file(const Poly& p) { return vars_line(p.vars()) + format(p) + "\n"; }

std::string format_ideal_file(const IdealFile& f) {
  std::string s = vars_line(*f.vars);
  if (f.order) s += "order: " + f.order->name() + "\n";
  for (const auto& g : f.gens) s += format(g) + "\n";
  return s;
}

std::string format_map_file(const PolyMap& m) {
  std::string s = vars_line(*m.source) + "target:";
  for (const auto& n : *m.target) s += " " + n;
  s += "\n";
  for (std::size_t k = 0; k < m.images.size(); ++k) s += (*m.target)[k] + " = " + format(m.images[k]) + "\n";
  return s;
}

std::string format_series_file(const TruncSeries& s) { return vars_line(s.body().vars()) + format_series(s); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io_error", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace badpoints
