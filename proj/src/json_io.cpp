#include "gmcdm/json_io.hpp"

#include <initializer_list>
#include <string_view>

#include "gmcdm/error.hpp"

namespace gmcdm {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& require_object(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where + " must be an object");
  return j;
}

void only_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) fail(where + ": unknown field '" + key + "'");
  }
}

const json& field(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + ": missing field '" + key + "'");
  return *it;
}

std::string string_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) fail(where + "." + key + " must be a string");
  return v.get<std::string>();
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where + " must be a number");
  return v.get<double>();
}

const json& array_field(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_array()) fail(where + "." + key + " must be an array");
  return v;
}

SortingData sorting_from_json(const json& j) {
  require_object(j, "sorting");
  only_keys(j, {"objects", "classes", "values"}, "sorting");
  SortingData s;
  for (const auto& o : array_field(j, "objects", "sorting")) {
    if (!o.is_string()) fail("sorting.objects entries must be strings");
    s.objects.push_back(o.get<std::string>());
  }
  const json& classes = require_object(field(j, "classes", "sorting"), "sorting.classes");
  for (const auto& [obj, cls] : classes.items()) {
    if (!cls.is_number_integer()) fail("sorting.classes[" + obj + "] must be an integer");
    s.classes[obj] = cls.get<int>();
  }
  const json& values = require_object(field(j, "values", "sorting"), "sorting.values");
  for (const auto& [obj, row] : values.items()) {
    require_object(row, "sorting.values[" + obj + "]");
    for (const auto& [crit, v] : row.items()) s.values[obj][crit] = number(v, "sorting.values[" + obj + "][" + crit + "]");
  }
  return s;
}

json sorting_to_json(const SortingData& s) {
  json classes = json::object();
  for (const auto& [obj, cls] : s.classes) classes[obj] = cls;
  json values = json::object();
  for (const auto& [obj, row] : s.values) {
    values[obj] = json::object();
    for (const auto& [crit, v] : row) values[obj][crit] = v;
  }
  return {{"objects", s.objects}, {"classes", std::move(classes)}, {"values", std::move(values)}};
}

json by_name(const std::map<std::string, double>& m) {
  json out = json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

std::string_view union_name(UnionKind k) { return k == UnionKind::AtLeast ? "atLeast" : "atMost"; }

}  // namespace

CellValue cell_from_json(const json& j) {
  if (j.is_number()) return CellValue(j.get<double>());
  if (!j.is_object()) fail("cell must be a number or an object");
  std::string kind;
  if (j.contains("kind")) {
    if (!j["kind"].is_string()) fail("cell.kind must be a string");
    kind = j["kind"].get<std::string>();
  } else if (j.contains("mu")) {
    kind = "ifs";
  } else {
    fail("cell object needs a kind");
  }
  if (kind == "crisp") {
    only_keys(j, {"kind", "value"}, "cell");
    return CellValue(number(field(j, "value", "cell"), "cell.value"));
  }
  if (kind == "ifs") {
    only_keys(j, {"kind", "mu", "nu"}, "cell");
    return CellValue(Ifv{number(field(j, "mu", "cell"), "cell.mu"), number(field(j, "nu", "cell"), "cell.nu")});
  }
  if (kind == "dist") {
    only_keys(j, {"kind", "outcomes"}, "cell");
    DiscreteDistribution d;
    for (const auto& pair : array_field(j, "outcomes", "cell")) {
      if (!pair.is_array() || pair.size() != 2) fail("dist outcomes must be [value, probability] pairs");
      d.outcomes.push_back({number(pair[0], "outcome value"), number(pair[1], "outcome probability")});
    }
    return CellValue(std::move(d));
  }
  fail("unknown cell kind '" + kind + "'");
}

json cell_to_json(const CellValue& cell) {
  switch (cell.kind()) {
    case CellKind::Crisp: return cell.crisp();
    case CellKind::Ifs: return {{"kind", "ifs"}, {"mu", cell.ifs().mu}, {"nu", cell.ifs().nu}};
    case CellKind::Dist: {
      json outcomes = json::array();
      for (const auto& o : cell.dist().outcomes) outcomes.push_back({o.value, o.probability});
      return {{"kind", "dist"}, {"outcomes", std::move(outcomes)}};
    }
  }
  return nullptr;
}

DecisionMatrix judgment_from_json(const json& j, const std::string& maker) {
  require_object(j, "judgment");
  only_keys(j, {"maker", "criterionWeights", "cells"}, "judgment");
  DecisionMatrix m;
  if (j.contains("maker")) {
    m.maker = string_field(j, "maker", "judgment");
    if (!maker.empty() && m.maker != maker) fail("judgment.maker does not match '" + maker + "'");
  } else if (maker.empty()) {
    fail("judgment: missing field 'maker'");
  } else {
    m.maker = maker;
  }
  const std::string where = "judgments[" + m.maker + "]";
  const json& weights = require_object(field(j, "criterionWeights", where), where + ".criterionWeights");
  for (const auto& [crit, w] : weights.items()) m.criterionWeights[crit] = number(w, where + ".criterionWeights");
  const json& cells = require_object(field(j, "cells", where), where + ".cells");
  for (const auto& [alt, row] : cells.items()) {
    require_object(row, where + ".cells[" + alt + "]");
    for (const auto& [crit, cell] : row.items()) m.set(alt, crit, cell_from_json(cell));
  }
  return m;
}

json judgment_to_json(const DecisionMatrix& matrix) {
  json cells = json::object();
  for (const auto& [alt, row] : matrix.cells) {
    cells[alt] = json::object();
    for (const auto& [crit, cell] : row) cells[alt][crit] = cell_to_json(cell);
  }
  return {{"maker", matrix.maker}, {"criterionWeights", by_name(matrix.criterionWeights)}, {"cells", std::move(cells)}};
}

GroupProblem problem_from_json(const json& doc) {
  require_object(doc, "document");
  only_keys(doc, {"problem"}, "document");
  const json& p = require_object(field(doc, "problem", "document"), "problem");
  only_keys(p, {"id", "alternatives", "criteria", "makers", "judgments", "sorting", "flags"}, "problem");

  GroupProblem problem;
  problem.id = string_field(p, "id", "problem");
  for (const auto& a : array_field(p, "alternatives", "problem")) {
    require_object(a, "alternative");
    only_keys(a, {"id", "name"}, "alternative");
    Alternative alt{string_field(a, "id", "alternative"), ""};
    alt.name = a.contains("name") ? string_field(a, "name", "alternative") : alt.id;
    problem.alternatives.push_back(std::move(alt));
  }
  for (const auto& c : array_field(p, "criteria", "problem")) {
    require_object(c, "criterion");
    only_keys(c, {"id", "name", "direction"}, "criterion");
    Criterion crit{string_field(c, "id", "criterion"), "", Direction::Benefit};
    crit.name = c.contains("name") ? string_field(c, "name", "criterion") : crit.id;
    const std::string dir = string_field(c, "direction", "criterion");
    if (dir == "benefit") crit.direction = Direction::Benefit;
    else if (dir == "cost") crit.direction = Direction::Cost;
    else fail("criterion.direction must be 'benefit' or 'cost'");
    problem.criteria.push_back(std::move(crit));
  }
  for (const auto& m : array_field(p, "makers", "problem")) {
    require_object(m, "maker");
    only_keys(m, {"id", "weight"}, "maker");
    problem.makers.push_back({string_field(m, "id", "maker"), number(field(m, "weight", "maker"), "maker.weight")});
  }
  if (p.contains("judgments")) {
    for (const auto& j : array_field(p, "judgments", "problem")) problem.matrices.push_back(judgment_from_json(j));
  }
  if (p.contains("sorting")) problem.sorting = sorting_from_json(p["sorting"]);
  if (p.contains("flags")) {
    for (const auto& f : array_field(p, "flags", "problem")) {
      if (!f.is_string() || !is_annotation_flag(f.get<std::string>())) {
        fail("flags accept only deficiency, dynamic, unclear, inaccuracy");
      }
      problem.flags.push_back(f.get<std::string>());
    }
  }
  return problem;
}

json problem_to_json(const GroupProblem& problem) {
  json alts = json::array();
  for (const auto& a : problem.alternatives) alts.push_back({{"id", a.id}, {"name", a.name}});
  json crits = json::array();
  for (const auto& c : problem.criteria) {
    crits.push_back({{"id", c.id}, {"name", c.name}, {"direction", to_string(c.direction)}});
  }
  json makers = json::array();
  for (const auto& m : problem.makers) makers.push_back({{"id", m.id}, {"weight", m.weight}});
  json judgments = json::array();
  for (const auto& m : problem.matrices) judgments.push_back(judgment_to_json(m));
  json p = {{"id", problem.id},
            {"alternatives", std::move(alts)},
            {"criteria", std::move(crits)},
            {"makers", std::move(makers)},
            {"judgments", std::move(judgments)}};
  if (problem.sorting) p["sorting"] = sorting_to_json(*problem.sorting);
  if (!problem.flags.empty()) p["flags"] = problem.flags;
  return {{"problem", std::move(p)}};
}

json to_json(const Ifv& v) { return {{"mu", v.mu}, {"nu", v.nu}}; }

json to_json(const ValidationReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) {
    violations.push_back({{"code", v.code},
                          {"location", v.location},
                          {"severity", v.severity == Severity::Error ? "error" : "warning"}});
  }
  return {{"valid", !report.has_errors()}, {"violations", std::move(violations)}};
}

json to_json(const EnvironmentReport& report) {
  json flags = json::array();
  for (auto f : report.flags) flags.push_back(to_string(f));
  json components = json::array();
  for (auto c : report.components) components.push_back(to_string(c));
  json kinds = json::object();
  for (const auto& [crit, set] : report.perCriterionKinds) {
    kinds[crit] = json::array();
    for (auto k : set) kinds[crit].push_back(to_string(k));
  }
  return {{"uncertaintyClass", to_string(report.uncertaintyClass)},
          {"components", std::move(components)},
          {"flags", std::move(flags)},
          {"perCriterionKinds", std::move(kinds)}};
}

json rank_summary(const RankResult& result) {
  return {{"method", result.method}, {"scores", by_name(result.scores)}, {"order", result.order}};
}

json to_json(const RankResult& result) {
  json out = rank_summary(result);
  out["diagnostics"] = result.diagnostics;
  return out;
}

json to_json(const ConsensusReport& report) {
  json conflicts = json::array();
  for (const auto& c : report.conflicts) {
    conflicts.push_back({{"maker", c.maker},
                         {"criterion", c.criterion},
                         {"severity", c.severity},
                         {"probedDistance", c.probedDistance}});
  }
  json individual = json::object();
  for (const auto& [maker, order] : report.individualOrders) individual[maker] = order;
  return {{"method", report.method},
          {"groupOrder", report.groupOrder},
          {"individualOrders", std::move(individual)},
          {"perMaker", by_name(report.perMaker)},
          {"consensusIndex", report.consensusIndex},
          {"conflicts", std::move(conflicts)}};
}

json to_json(const WhatIfResult& result) {
  json out = {{"criterion", result.criterion},
              {"delta", result.delta},
              {"adjustedWeights", by_name(result.adjustedWeights)},
              {"baselineOrder", result.baselineOrder},
              {"newOrder", result.newOrder},
              {"flipped", result.flipped},
              {"minFlipDelta", nullptr},
              {"flipWeight", nullptr}};
  if (result.minFlipDelta) out["minFlipDelta"] = *result.minFlipDelta;
  if (result.flipWeight) out["flipWeight"] = *result.flipWeight;
  return out;
}

json to_json(const RankFrequencies& freq) {
  json out = json::object();
  for (std::size_t a = 0; a < freq.alternatives.size(); ++a) out[freq.alternatives[a]] = freq.frequency[a];
  return out;
}

json to_json(const Approximation& approx) {
  auto ids = [](const std::set<std::string>& s) { return json(std::vector<std::string>(s.begin(), s.end())); };
  return {{"union", union_name(approx.kind)},
          {"classIndex", approx.classIndex},
          {"lower", ids(approx.lower)},
          {"upper", ids(approx.upper)},
          {"boundary", ids(approx.boundary)}};
}

json to_json(const DecisionRule& rule, const SortingTable& table) {
  json conditions = json::array();
  for (const auto& c : rule.conditions) {
    conditions.push_back({{"criterion", table.criteria[c.criterion].id},
                          {"relation", c.atLeast ? ">=" : "<="},
                          {"threshold", c.threshold}});
  }
  return {{"kind", union_name(rule.kind)},
          {"classIndex", rule.classIndex},
          {"conditions", std::move(conditions)},
          {"certain", rule.certain},
          {"support", rule.support}};
}

}  // namespace gmcdm
