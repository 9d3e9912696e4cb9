#include "gmcdm/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "gmcdm/error.hpp"
#include "gmcdm/fuzzy.hpp"

namespace gmcdm {

namespace {

// Maker indices sorted by maker id.
std::vector<std::size_t> maker_order(const GroupProblem& problem) {
  std::vector<std::size_t> idx(problem.makers.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return problem.makers[a].id < problem.makers[b].id; });
  return idx;
}

std::size_t criterion_index(const GroupProblem& problem, const std::string& criterion) {
  for (std::size_t j = 0; j < problem.criteria.size(); ++j) {
    if (problem.criteria[j].id == criterion) return j;
  }
  throw Error(ErrorCode::UnknownCriterion, criterion);
}

DecisionMatrix with_weights(const GroupProblem& problem, DecisionMatrix plane, std::span<const double> w) {
  plane.criterionWeights.clear();
  for (std::size_t j = 0; j < problem.criteria.size(); ++j) plane.criterionWeights[problem.criteria[j].id] = w[j];
  return plane;
}

}  // namespace

DecisionMatrix aggregate_group_matrix(const GroupProblem& problem) {
  const auto order = maker_order(problem);
  DecisionMatrix group;
  group.maker = "group";

  for (const auto& alt : problem.alternatives) {
    for (const auto& crit : problem.criteria) {
      std::vector<const CellValue*> cells;
      std::vector<double> weights;
      for (auto k : order) {
        const DecisionMatrix* plane = problem.matrix_for(problem.makers[k].id);
        const CellValue* cell = plane == nullptr ? nullptr : plane->find(alt.id, crit.id);
        if (cell == nullptr) continue;
        if (!cells.empty() && cell->kind() != cells.front()->kind()) {
          throw Error(ErrorCode::MixedCellKinds, "(" + alt.id + "," + crit.id + ")");
        }
        cells.push_back(cell);
        weights.push_back(problem.makers[k].weight);
      }
      if (cells.empty()) continue;
      weights = normalize_weights(weights);

      switch (cells.front()->kind()) {
        case CellKind::Crisp: {
          double v = 0.0;
          for (std::size_t i = 0; i < cells.size(); ++i) v += weights[i] * cells[i]->crisp();
          group.set(alt.id, crit.id, v);
          break;
        }
        case CellKind::Ifs: {
          std::vector<Ifv> values;
          for (const auto* c : cells) values.push_back(c->ifs());
          group.set(alt.id, crit.id, ifwa(values, weights));
          break;
        }
        case CellKind::Dist: {
          DiscreteDistribution mixture;
          for (std::size_t i = 0; i < cells.size(); ++i) {
            for (const auto& o : cells[i]->dist().outcomes) {
              mixture.outcomes.push_back({o.value, weights[i] * o.probability});
            }
          }
          group.set(alt.id, crit.id, mixture.canonical());
          break;
        }
      }
    }
  }

  std::vector<double> omega(problem.criteria.size(), 0.0);
  for (auto k : order) {
    const DecisionMatrix* plane = problem.matrix_for(problem.makers[k].id);
    if (plane == nullptr) continue;
    const auto w = criterion_weight_vector(problem, *plane);
    for (std::size_t j = 0; j < omega.size(); ++j) omega[j] += problem.makers[k].weight * w[j];
  }
  omega = normalize_weights(omega);
  return with_weights(problem, std::move(group), omega);
}

double kendall_distance(std::span<const std::string> orderA, std::span<const std::string> orderB) {
  if (orderA.size() != orderB.size() || orderA.size() < 2) {
    throw Error(ErrorCode::NotSameSet, "orders differ in length or have fewer than two ids");
  }
  std::map<std::string, std::size_t> posB;
  for (std::size_t i = 0; i < orderB.size(); ++i) posB[orderB[i]] = i;
  std::vector<std::size_t> mapped;
  std::set<std::string> seen;
  for (const auto& id : orderA) {
    auto it = posB.find(id);
    if (it == posB.end() || !seen.insert(id).second) throw Error(ErrorCode::NotSameSet, id);
    mapped.push_back(it->second);
  }
  if (posB.size() != orderB.size()) throw Error(ErrorCode::NotSameSet, "duplicate ids");
  std::size_t discordant = 0;
  for (std::size_t i = 0; i < mapped.size(); ++i) {
    for (std::size_t j = i + 1; j < mapped.size(); ++j) discordant += mapped[i] > mapped[j] ? 1 : 0;
  }
  const double n = static_cast<double>(mapped.size());
  return static_cast<double>(discordant) / (n * (n - 1.0) / 2.0);
}

ConsensusReport consensus(const GroupProblem& problem, std::string_view method, const MethodOptions& options,
                          const ConsensusOptions& consensusOptions) {
  ConsensusReport report;
  report.method = std::string(method);
  const DecisionMatrix group = aggregate_group_matrix(problem);
  report.groupOrder = run_method(method, problem, group, options).order;

  double weightedDistance = 0.0;
  for (auto k : maker_order(problem)) {
    const auto& maker = problem.makers[k];
    const DecisionMatrix* plane = problem.matrix_for(maker.id);
    if (plane == nullptr) throw Error(ErrorCode::MissingCell, "no judgments for maker " + maker.id);
    auto individual = run_method(method, problem, *plane, options).order;
    const double d = kendall_distance(individual, report.groupOrder);
    report.individualOrders[maker.id] = std::move(individual);
    report.perMaker[maker.id] = d;
    weightedDistance += maker.weight * d;

    if (d <= consensusOptions.conflictThreshold) continue;
    // Probe each criterion weight by +/- probe; keep the one that most reduces d.
    const auto base = normalize_weights(criterion_weight_vector(problem, *plane));
    Conflict conflict{maker.id, problem.criteria.front().id, d, d};
    for (std::size_t j = 0; j < problem.criteria.size(); ++j) {
      for (double probe : {consensusOptions.weightProbe, -consensusOptions.weightProbe}) {
        const double shifted = base[j] + probe;
        if (shifted < 0.0 || shifted > 1.0) continue;
        const DecisionMatrix probed = with_weights(problem, *plane, shift_weight(base, j, probe));
        const double pd = kendall_distance(run_method(method, problem, probed, options).order, report.groupOrder);
        if (pd < conflict.probedDistance) {
          conflict.probedDistance = pd;
          conflict.criterion = problem.criteria[j].id;
        }
      }
    }
    report.conflicts.push_back(std::move(conflict));
  }
  report.consensusIndex = std::clamp(1.0 - weightedDistance, 0.0, 1.0);
  return report;
}

std::vector<double> shift_weight(std::span<const double> weights, std::size_t index, double delta) {
  if (index >= weights.size()) throw Error(ErrorCode::UnknownCriterion, "criterion index out of range");
  std::vector<double> out(weights.begin(), weights.end());
  if (delta == 0.0) return out;
  const double target = weights[index] + delta;
  if (!(target >= 0.0 && target <= 1.0)) {
    throw Error(ErrorCode::WeightOutOfRange, "shifted weight " + std::to_string(target) + " outside [0,1]");
  }
  if (weights.size() == 1) {
    out[0] = 1.0;
    return out;
  }
  double rest = 0.0;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j != index) rest += weights[j];
  }
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (j == index) continue;
    out[j] = rest > 0.0 ? weights[j] * (1.0 - target) / rest
                        : (1.0 - target) / static_cast<double>(weights.size() - 1);
  }
  out[index] = target;
  return out;
}

namespace {

struct FlipSearch {
  const GroupProblem& problem;
  std::string_view method;
  const MethodOptions& options;
  const DecisionMatrix& group;
  std::vector<double> base;
  std::size_t index;
  std::string baselineTop;

  bool flips(double delta) const {
    const auto plane = with_weights(problem, group, shift_weight(base, index, delta));
    return run_method(method, problem, plane, options).order.front() != baselineTop;
  }

  // First flipping delta walking from 0 towards `limit`, refined by bisection.
  std::optional<double> toward(double limit) const {
    constexpr int kSteps = 200;
    constexpr double kResolution = 1e-4;
    if (std::abs(limit) < kResolution) return std::nullopt;
    double lo = 0.0;
    for (int s = 1; s <= kSteps; ++s) {
      const double hi = limit * static_cast<double>(s) / kSteps;
      if (!flips(hi)) {
        lo = hi;
        continue;
      }
      double a = lo;
      double b = hi;
      while (std::abs(b - a) > kResolution) {
        const double mid = 0.5 * (a + b);
        if (flips(mid)) b = mid;
        else a = mid;
      }
      return b;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<double> min_weight_flip(const GroupProblem& problem, std::string_view method,
                                      const std::string& criterion, const MethodOptions& options) {
  const std::size_t index = criterion_index(problem, criterion);
  if (problem.criteria.size() < 2) return std::nullopt;
  const DecisionMatrix group = aggregate_group_matrix(problem);
  auto base = normalize_weights(criterion_weight_vector(problem, group));
  const auto baseline = run_method(method, problem, with_weights(problem, group, base), options);
  FlipSearch search{problem, method, options, group, base, index, baseline.order.front()};

  const auto up = search.toward(1.0 - base[index]);
  const auto down = search.toward(-base[index]);
  if (up && down) return std::abs(*down) < std::abs(*up) ? down : up;
  return up ? up : down;
}

WhatIfResult whatif_weights(const GroupProblem& problem, std::string_view method, const std::string& criterion,
                            double delta, const MethodOptions& options) {
  const std::size_t index = criterion_index(problem, criterion);
  const DecisionMatrix group = aggregate_group_matrix(problem);
  const auto base = normalize_weights(criterion_weight_vector(problem, group));
  const auto adjusted = shift_weight(base, index, delta);

  WhatIfResult result;
  result.criterion = criterion;
  result.delta = delta;
  for (std::size_t j = 0; j < problem.criteria.size(); ++j) result.adjustedWeights[problem.criteria[j].id] = adjusted[j];
  result.baselineOrder = run_method(method, problem, with_weights(problem, group, base), options).order;
  result.newOrder = run_method(method, problem, with_weights(problem, group, adjusted), options).order;
  result.flipped = result.newOrder.front() != result.baselineOrder.front();
  result.minFlipDelta = min_weight_flip(problem, method, criterion, options);
  if (result.minFlipDelta) result.flipWeight = base[index] + *result.minFlipDelta;
  return result;
}

}  // namespace gmcdm
