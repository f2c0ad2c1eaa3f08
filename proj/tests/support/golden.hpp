#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace badpoints::testing {

inline std::string golden_path(const std::string& name) { return std::string(BADPOINTS_GOLDEN_DIR) + "/" + name; }

inline nlohmann::json load_golden_json(const std::string& name) {
  std::ifstream in(golden_path(name));
  if (!in) throw std::runtime_error("missing golden file " + name);
  return nlohmann::json::parse(in);
}

inline std::string load_golden_text(const std::string& name) {
  std::ifstream in(golden_path(name));
  if (!in) throw std::runtime_error("missing golden file " + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace badpoints::testing
