#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "gmcdm/model.hpp"

namespace gmcdm {

enum class UncertaintyClass { Certain, Stochastic, Fuzzy, Rough, Multiple };

std::string_view to_string(UncertaintyClass u);
std::optional<UncertaintyClass> uncertainty_from_string(std::string_view s);

// The six information situations of the environment stage.
enum class EnvironmentFlag { Deficiency, Incompleteness, Dynamic, Unclear, Inaccuracy, Multiple };

std::string_view to_string(EnvironmentFlag f);
std::optional<EnvironmentFlag> flag_from_string(std::string_view s);

/// Flags a caller may annotate on a problem; `incompleteness` and `multiple`
/// are detected, never annotated.
bool is_annotation_flag(std::string_view s);

struct EnvironmentReport {
  UncertaintyClass uncertaintyClass = UncertaintyClass::Certain;
  // Uncertain kinds present (subset of stochastic, fuzzy, rough), in that order.
  std::vector<UncertaintyClass> components;
  std::set<EnvironmentFlag> flags;
  std::map<std::string, std::set<CellKind>> perCriterionKinds;
};

/// Stage-1 classification: dist cells -> stochastic, ifs cells -> fuzzy, a
/// sorting table -> rough, two or more of those -> multiple.
EnvironmentReport classify_problem(const GroupProblem& problem);

/// Method ids recommended for the environment, duplicate-free and never empty.
std::vector<std::string> recommend_methods(const EnvironmentReport& report);

}  // namespace gmcdm
