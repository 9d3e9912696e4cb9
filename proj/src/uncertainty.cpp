#include "gmcdm/uncertainty.hpp"

#include <algorithm>
#include <array>

namespace gmcdm {

std::string_view to_string(UncertaintyClass u) {
  switch (u) {
    case UncertaintyClass::Certain: return "certain";
    case UncertaintyClass::Stochastic: return "stochastic";
    case UncertaintyClass::Fuzzy: return "fuzzy";
    case UncertaintyClass::Rough: return "rough";
    case UncertaintyClass::Multiple: return "multiple";
  }
  return "unknown";
}

std::optional<UncertaintyClass> uncertainty_from_string(std::string_view s) {
  for (auto u : {UncertaintyClass::Certain, UncertaintyClass::Stochastic, UncertaintyClass::Fuzzy,
                 UncertaintyClass::Rough, UncertaintyClass::Multiple}) {
    if (to_string(u) == s) return u;
  }
  return std::nullopt;
}

std::string_view to_string(EnvironmentFlag f) {
  switch (f) {
    case EnvironmentFlag::Deficiency: return "deficiency";
    case EnvironmentFlag::Incompleteness: return "incompleteness";
    case EnvironmentFlag::Dynamic: return "dynamic";
    case EnvironmentFlag::Unclear: return "unclear";
    case EnvironmentFlag::Inaccuracy: return "inaccuracy";
    case EnvironmentFlag::Multiple: return "multiple";
  }
  return "unknown";
}

std::optional<EnvironmentFlag> flag_from_string(std::string_view s) {
  for (auto f : {EnvironmentFlag::Deficiency, EnvironmentFlag::Incompleteness, EnvironmentFlag::Dynamic,
                 EnvironmentFlag::Unclear, EnvironmentFlag::Inaccuracy, EnvironmentFlag::Multiple}) {
    if (to_string(f) == s) return f;
  }
  return std::nullopt;
}

bool is_annotation_flag(std::string_view s) {
  auto f = flag_from_string(s);
  return f && *f != EnvironmentFlag::Incompleteness && *f != EnvironmentFlag::Multiple;
}

EnvironmentReport classify_problem(const GroupProblem& problem) {
  EnvironmentReport report;
  bool anyDist = false;
  bool anyIfs = false;
  bool incomplete = false;

  for (const auto& c : problem.criteria) report.perCriterionKinds[c.id];
  for (const auto& matrix : problem.matrices) {
    for (const auto& [alt, row] : matrix.cells) {
      for (const auto& [crit, cell] : row) {
        report.perCriterionKinds[crit].insert(cell.kind());
        anyDist = anyDist || cell.kind() == CellKind::Dist;
        anyIfs = anyIfs || cell.kind() == CellKind::Ifs;
      }
    }
    for (const auto& a : problem.alternatives) {
      for (const auto& c : problem.criteria) {
        if (matrix.find(a.id, c.id) == nullptr) incomplete = true;
      }
    }
  }
  for (const auto& m : problem.makers) {
    if (problem.matrix_for(m.id) == nullptr) incomplete = true;
  }

  if (anyDist) report.components.push_back(UncertaintyClass::Stochastic);
  if (anyIfs) report.components.push_back(UncertaintyClass::Fuzzy);
  if (problem.sorting) report.components.push_back(UncertaintyClass::Rough);

  if (report.components.empty()) report.uncertaintyClass = UncertaintyClass::Certain;
  else if (report.components.size() == 1) report.uncertaintyClass = report.components.front();
  else report.uncertaintyClass = UncertaintyClass::Multiple;

  for (const auto& annotation : problem.flags) {
    if (is_annotation_flag(annotation)) report.flags.insert(*flag_from_string(annotation));
  }
  if (incomplete) report.flags.insert(EnvironmentFlag::Incompleteness);
  if (report.components.size() >= 2) report.flags.insert(EnvironmentFlag::Multiple);
  return report;
}

namespace {

std::vector<std::string> methods_for(UncertaintyClass u) {
  switch (u) {
    case UncertaintyClass::Certain: return {"weighted_sum", "promethee2", "sir", "electre1"};
    case UncertaintyClass::Stochastic: return {"expected_utility", "monte_carlo_stability", "fsd"};
    case UncertaintyClass::Fuzzy: return {"ifwa_group"};
    case UncertaintyClass::Rough: return {"drsa"};
    case UncertaintyClass::Multiple: return {};
  }
  return {};
}

}  // namespace

std::vector<std::string> recommend_methods(const EnvironmentReport& report) {
  if (report.uncertaintyClass != UncertaintyClass::Multiple) {
    return methods_for(report.uncertaintyClass);
  }
  std::vector<std::string> out;
  for (auto part : {UncertaintyClass::Stochastic, UncertaintyClass::Fuzzy, UncertaintyClass::Rough}) {
    if (std::find(report.components.begin(), report.components.end(), part) == report.components.end()) {
      continue;
    }
    for (auto& m : methods_for(part)) {
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(std::move(m));
    }
  }
  return out;
}

}  // namespace gmcdm
