#include "gmcdm/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gmcdm/error.hpp"

namespace gmcdm {

std::string_view to_string(Direction d) {
  return d == Direction::Benefit ? "benefit" : "cost";
}

std::string_view to_string(CellKind k) {
  switch (k) {
    case CellKind::Crisp: return "crisp";
    case CellKind::Dist: return "dist";
    case CellKind::Ifs: return "ifs";
  }
  return "unknown";
}

bool Ifv::valid() const {
  return std::isfinite(mu) && std::isfinite(nu) && mu >= 0.0 && mu <= 1.0 && nu >= 0.0 &&
         nu <= 1.0 && mu + nu <= 1.0 + kClosureTolerance;
}

DiscreteDistribution DiscreteDistribution::canonical() const {
  std::vector<Outcome> sorted = outcomes;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Outcome& a, const Outcome& b) { return a.value < b.value; });
  DiscreteDistribution out;
  for (const auto& o : sorted) {
    if (o.probability <= 0.0) continue;
    if (!out.outcomes.empty() && out.outcomes.back().value == o.value) {
      out.outcomes.back().probability += o.probability;
    } else {
      out.outcomes.push_back(o);
    }
  }
  return out;
}

bool DiscreteDistribution::valid() const {
  if (outcomes.empty()) return false;
  double total = 0.0;
  for (const auto& o : outcomes) {
    if (!std::isfinite(o.value) || !std::isfinite(o.probability)) return false;
    if (o.probability < 0.0 || o.probability > 1.0) return false;
    total += o.probability;
  }
  return std::abs(total - 1.0) <= kClosureTolerance;
}

double DiscreteDistribution::min_value() const {
  double m = outcomes.front().value;
  for (const auto& o : outcomes) m = std::min(m, o.value);
  return m;
}

double DiscreteDistribution::max_value() const {
  double m = outcomes.front().value;
  for (const auto& o : outcomes) m = std::max(m, o.value);
  return m;
}

const CellValue* DecisionMatrix::find(const std::string& alternative,
                                      const std::string& criterion) const {
  auto row = cells.find(alternative);
  if (row == cells.end()) return nullptr;
  auto cell = row->second.find(criterion);
  return cell == row->second.end() ? nullptr : &cell->second;
}

const DecisionMatrix* GroupProblem::matrix_for(const std::string& maker) const {
  for (const auto& m : matrices) {
    if (m.maker == maker) return &m;
  }
  return nullptr;
}

std::vector<std::string> GroupProblem::alternative_ids() const {
  std::vector<std::string> ids;
  ids.reserve(alternatives.size());
  for (const auto& a : alternatives) ids.push_back(a.id);
  return ids;
}

std::vector<std::string> GroupProblem::criterion_ids() const {
  std::vector<std::string> ids;
  ids.reserve(criteria.size());
  for (const auto& c : criteria) ids.push_back(c.id);
  return ids;
}

std::vector<Direction> GroupProblem::directions() const {
  std::vector<Direction> dirs;
  dirs.reserve(criteria.size());
  for (const auto& c : criteria) dirs.push_back(c.direction);
  return dirs;
}

std::vector<double> GroupProblem::maker_weights() const {
  std::vector<double> w;
  w.reserve(makers.size());
  for (const auto& m : makers) w.push_back(m.weight);
  return w;
}

bool ValidationReport::has_errors() const {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

namespace {

bool in_unit(double w) { return std::isfinite(w) && w >= 0.0 && w <= 1.0; }

template <typename T>
void check_ids(const std::vector<T>& items, const std::string& where, ValidationReport& report) {
  std::set<std::string> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& id = items[i].id;
    std::string loc = where + "[" + std::to_string(i) + "]";
    if (id.empty()) report.violations.push_back({"EMPTY_ID", loc, Severity::Error});
    else if (!seen.insert(id).second)
      report.violations.push_back({"DUPLICATE_ID", loc + ":" + id, Severity::Error});
  }
}

}  // namespace

ValidationReport validate_problem(const GroupProblem& problem, bool strict) {
  ValidationReport report;
  auto add = [&](std::string code, std::string loc, Severity sev = Severity::Error) {
    report.violations.push_back({std::move(code), std::move(loc), sev});
  };

  check_ids(problem.alternatives, "alternatives", report);
  check_ids(problem.criteria, "criteria", report);
  check_ids(problem.makers, "makers", report);
  if (problem.alternatives.size() < 2) add("TOO_FEW_ALTERNATIVES", "alternatives");
  if (problem.criteria.empty()) add("NO_CRITERIA", "criteria");
  if (problem.makers.empty()) add("NO_MAKERS", "makers");

  std::set<std::string> alts;
  for (const auto& a : problem.alternatives) alts.insert(a.id);
  std::set<std::string> crits;
  for (const auto& c : problem.criteria) crits.insert(c.id);
  std::set<std::string> makers;

  double makerSum = 0.0;
  for (const auto& m : problem.makers) {
    makers.insert(m.id);
    if (!in_unit(m.weight)) add("WEIGHT_RANGE", "makers:" + m.id);
    makerSum += m.weight;
  }
  if (!problem.makers.empty() && !(std::abs(makerSum - 1.0) <= kWeightSumTolerance)) {
    add("WEIGHT_SUM", "makers");
  }

  std::set<std::string> seenMatrices;
  for (const auto& matrix : problem.matrices) {
    const std::string base = "judgments[" + matrix.maker + "]";
    if (!makers.contains(matrix.maker)) {
      add("UNKNOWN_MAKER", base);
      continue;
    }
    if (!seenMatrices.insert(matrix.maker).second) {
      add("DUPLICATE_MATRIX", base);
      continue;
    }

    double weightSum = 0.0;
    for (const auto& [crit, w] : matrix.criterionWeights) {
      if (!crits.contains(crit)) add("UNKNOWN_CRITERION", base + ".criterionWeights[" + crit + "]");
      if (!in_unit(w)) add("WEIGHT_RANGE", base + ".criterionWeights[" + crit + "]");
      weightSum += w;
    }
    if (!(std::abs(weightSum - 1.0) <= kWeightSumTolerance)) {
      add("CRITERION_WEIGHT_SUM", base + ".criterionWeights");
    }

    for (const auto& [alt, row] : matrix.cells) {
      if (!alts.contains(alt)) add("UNKNOWN_ALTERNATIVE", base + ".cells[" + alt + "]");
      for (const auto& [crit, cell] : row) {
        const std::string loc = base + ".cells[" + alt + "][" + crit + "]";
        if (!crits.contains(crit)) add("UNKNOWN_CRITERION", loc);
        switch (cell.kind()) {
          case CellKind::Crisp:
            if (!std::isfinite(cell.crisp())) add("NON_FINITE", loc);
            break;
          case CellKind::Dist:
            if (!cell.dist().valid()) add("BAD_DISTRIBUTION", loc);
            break;
          case CellKind::Ifs:
            if (!cell.ifs().valid()) add("BAD_IFS", loc);
            break;
        }
      }
    }

    for (const auto& a : problem.alternatives) {
      for (const auto& c : problem.criteria) {
        if (matrix.find(a.id, c.id) == nullptr) {
          add("MISSING_CELL", base + ".cells[" + a.id + "][" + c.id + "]",
              strict ? Severity::Error : Severity::Warning);
        }
      }
    }
  }
  for (const auto& m : problem.makers) {
    if (!seenMatrices.contains(m.id)) add("MISSING_MATRIX", "judgments[" + m.id + "]");
  }

  if (problem.sorting) {
    const auto& s = *problem.sorting;
    std::set<std::string> objects;
    int maxClass = 0;
    for (const auto& obj : s.objects) {
      const std::string loc = "sorting.objects[" + obj + "]";
      if (obj.empty()) add("EMPTY_ID", "sorting.objects");
      if (!objects.insert(obj).second) add("DUPLICATE_ID", loc);
      auto cls = s.classes.find(obj);
      if (cls == s.classes.end()) {
        add("SORTING_MISSING_CLASS", loc);
      } else if (cls->second < 1) {
        add("SORTING_BAD_CLASS", loc);
      } else {
        maxClass = std::max(maxClass, cls->second);
      }
      auto row = s.values.find(obj);
      for (const auto& c : problem.criteria) {
        if (row == s.values.end() || !row->second.contains(c.id)) {
          add("SORTING_MISSING_VALUE", loc + "[" + c.id + "]");
        } else if (!std::isfinite(row->second.at(c.id))) {
          add("NON_FINITE", loc + "[" + c.id + "]");
        }
      }
      if (row != s.values.end()) {
        for (const auto& [crit, v] : row->second) {
          if (!crits.contains(crit)) add("UNKNOWN_CRITERION", loc + "[" + crit + "]");
        }
      }
    }
    for (const auto& [obj, cls] : s.classes) {
      if (!objects.contains(obj)) add("SORTING_UNKNOWN_OBJECT", "sorting.classes[" + obj + "]");
    }
    for (const auto& [obj, row] : s.values) {
      if (!objects.contains(obj)) add("SORTING_UNKNOWN_OBJECT", "sorting.values[" + obj + "]");
    }
    if (maxClass < 2) add("SORTING_TOO_FEW_CLASSES", "sorting.classes");
  }

  return report;
}

NumericMatrix crisp_values(const GroupProblem& problem, const DecisionMatrix& matrix) {
  NumericMatrix out;
  out.alternatives = problem.alternative_ids();
  out.criteria = problem.criterion_ids();
  out.values.assign(out.rows(), std::vector<double>(out.cols(), 0.0));
  for (std::size_t a = 0; a < out.rows(); ++a) {
    for (std::size_t c = 0; c < out.cols(); ++c) {
      const CellValue* cell = matrix.find(out.alternatives[a], out.criteria[c]);
      const std::string where = "(" + out.alternatives[a] + "," + out.criteria[c] + ")";
      if (cell == nullptr) throw Error(ErrorCode::MissingCell, where);
      if (cell->kind() != CellKind::Crisp) throw Error(ErrorCode::NonCrispCell, where);
      out.values[a][c] = cell->crisp();
    }
  }
  return out;
}

namespace {

void check_directions(const NumericMatrix& m, std::span<const Direction> directions) {
  if (directions.size() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "directions vs criteria");
  }
  for (const auto& row : m.values) {
    if (row.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
  }
}

void min_max_column(NumericMatrix& out, const NumericMatrix& raw, std::size_t c, Direction dir) {
  double lo = raw.at(0, c);
  double hi = lo;
  for (std::size_t a = 0; a < raw.rows(); ++a) {
    lo = std::min(lo, raw.at(a, c));
    hi = std::max(hi, raw.at(a, c));
  }
  for (std::size_t a = 0; a < raw.rows(); ++a) {
    const double v = raw.at(a, c);
    if (hi == lo) out.values[a][c] = 0.5;
    else if (dir == Direction::Benefit) out.values[a][c] = (v - lo) / (hi - lo);
    else out.values[a][c] = (hi - v) / (hi - lo);
  }
}

}  // namespace

NumericMatrix normalize_crisp_matrix(const NumericMatrix& raw, std::span<const Direction> directions) {
  check_directions(raw, directions);
  NumericMatrix out = raw;
  if (raw.rows() == 0) return out;
  for (std::size_t c = 0; c < raw.cols(); ++c) min_max_column(out, raw, c, directions[c]);
  return out;
}

NumericMatrix normalize_crisp_matrix(const GroupProblem& problem, const DecisionMatrix& matrix) {
  const auto dirs = problem.directions();
  return normalize_crisp_matrix(crisp_values(problem, matrix), dirs);
}

NumericMatrix unit_scale_matrix(const NumericMatrix& raw, std::span<const Direction> directions) {
  check_directions(raw, directions);
  NumericMatrix out = raw;
  if (raw.rows() == 0) return out;
  for (std::size_t c = 0; c < raw.cols(); ++c) {
    bool unit = true;
    for (std::size_t a = 0; a < raw.rows(); ++a) {
      unit = unit && raw.at(a, c) >= 0.0 && raw.at(a, c) <= 1.0;
    }
    if (!unit) {
      min_max_column(out, raw, c, directions[c]);
    } else if (directions[c] == Direction::Cost) {
      for (std::size_t a = 0; a < raw.rows(); ++a) out.values[a][c] = 1.0 - raw.at(a, c);
    }
  }
  return out;
}

std::vector<double> normalize_weights(std::span<const double> raw) {
  double total = 0.0;
  for (double w : raw) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::WeightOutOfRange, "weights must be finite and nonnegative");
    }
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::AllZeroWeights, "weights sum to zero");
  std::vector<double> out(raw.begin(), raw.end());
  for (double& w : out) w /= total;
  return out;
}

std::vector<double> criterion_weight_vector(const GroupProblem& problem, const DecisionMatrix& matrix) {
  std::vector<double> w;
  w.reserve(problem.criteria.size());
  for (const auto& c : problem.criteria) {
    auto it = matrix.criterionWeights.find(c.id);
    w.push_back(it == matrix.criterionWeights.end() ? 0.0 : it->second);
  }
  return w;
}

}  // namespace gmcdm
