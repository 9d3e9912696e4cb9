#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "gmcdm/json_io.hpp"

namespace gmcdm::testing {

inline std::string fixture_path(const std::string& name) { return std::string(GMCDM_FIXTURE_DIR) + "/" + name; }

inline nlohmann::json fixture_json(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::stringstream ss;
  ss << in.rdbuf();
  return nlohmann::json::parse(ss.str());
}

inline GroupProblem fixture_problem(const std::string& name) { return problem_from_json(fixture_json(name)); }

}  // namespace gmcdm::testing
