#pragma once

// Hand-rolled random instance generators shared by the property tests and the
// acceptance suite.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "gmcdm/model.hpp"
#include "gmcdm/rough.hpp"

namespace gmcdm::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = 0.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> w(n);
  for (auto& x : w) x = uniform(rng, 0.05, 1.0);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return w;
}

inline Ifv random_ifv(Rng& rng) {
  const double mu = uniform(rng);
  const double nu = uniform(rng) * (1.0 - mu);
  return {mu, nu};
}

/// Distribution with up to `maxOutcomes` distinct integer-valued outcomes in
/// [lo, hi] and probabilities that sum to 1.
inline DiscreteDistribution random_distribution(Rng& rng, int maxOutcomes, int lo = 0, int hi = 5) {
  const int count = uniform_int(rng, 1, maxOutcomes);
  std::vector<int> support;
  while (static_cast<int>(support.size()) < count && static_cast<int>(support.size()) <= hi - lo) {
    const int v = uniform_int(rng, lo, hi);
    if (std::find(support.begin(), support.end(), v) == support.end()) support.push_back(v);
  }
  std::sort(support.begin(), support.end());
  const auto probs = random_simplex(rng, support.size());
  DiscreteDistribution d;
  for (std::size_t i = 0; i < support.size(); ++i) d.outcomes.push_back({double(support[i]), probs[i]});
  return d;
}

inline std::string alt_id(std::size_t i) { return "a" + std::to_string(i + 1); }
inline std::string crit_id(std::size_t i) { return "c" + std::to_string(i + 1); }
inline std::string maker_id(std::size_t i) { return "m" + std::to_string(i + 1); }

enum class CellMode { Crisp, Ifs, Dist };

struct ProblemShape {
  std::size_t alternatives = 3;
  std::size_t criteria = 2;
  std::size_t makers = 1;
  CellMode mode = CellMode::Crisp;
};

/// A complete, strictly valid problem with random values, directions, maker
/// weights and criterion weights.
inline GroupProblem random_problem(Rng& rng, const ProblemShape& shape) {
  GroupProblem p;
  p.id = "p" + std::to_string(rng() % 100000);
  for (std::size_t i = 0; i < shape.alternatives; ++i) p.alternatives.push_back({alt_id(i), "Alt " + alt_id(i)});
  for (std::size_t j = 0; j < shape.criteria; ++j) {
    p.criteria.push_back({crit_id(j), "Crit " + crit_id(j), rng() % 3 == 0 ? Direction::Cost : Direction::Benefit});
  }
  const auto makerWeights = random_simplex(rng, shape.makers);
  for (std::size_t k = 0; k < shape.makers; ++k) p.makers.push_back({maker_id(k), makerWeights[k]});
  for (std::size_t k = 0; k < shape.makers; ++k) {
    DecisionMatrix m;
    m.maker = maker_id(k);
    const auto w = random_simplex(rng, shape.criteria);
    for (std::size_t j = 0; j < shape.criteria; ++j) m.criterionWeights[crit_id(j)] = w[j];
    for (std::size_t i = 0; i < shape.alternatives; ++i) {
      for (std::size_t j = 0; j < shape.criteria; ++j) {
        switch (shape.mode) {
          case CellMode::Crisp: m.set(alt_id(i), crit_id(j), std::round(uniform(rng, 0.0, 10.0) * 100) / 100); break;
          case CellMode::Ifs: m.set(alt_id(i), crit_id(j), random_ifv(rng)); break;
          case CellMode::Dist: m.set(alt_id(i), crit_id(j), random_distribution(rng, 3)); break;
        }
      }
    }
    p.matrices.push_back(std::move(m));
  }
  return p;
}

inline SortingTable random_sorting_table(Rng& rng, std::size_t maxObjects = 10, std::size_t maxCriteria = 3,
                                         int maxClasses = 3) {
  SortingTable t;
  const std::size_t n = static_cast<std::size_t>(uniform_int(rng, 1, int(maxObjects)));
  const std::size_t c = static_cast<std::size_t>(uniform_int(rng, 1, int(maxCriteria)));
  t.classCount = uniform_int(rng, 2, maxClasses);
  for (std::size_t j = 0; j < c; ++j) {
    t.criteria.push_back({crit_id(j), crit_id(j), rng() % 4 == 0 ? Direction::Cost : Direction::Benefit});
  }
  for (std::size_t i = 0; i < n; ++i) {
    t.objects.push_back("x" + std::to_string(i + 1));
    std::vector<double> row(c);
    for (auto& v : row) v = uniform_int(rng, 0, 4);
    t.values.push_back(std::move(row));
    t.classes.push_back(uniform_int(rng, 1, t.classCount));
  }
  return t;
}

/// Table whose classes are a monotone function of a weighted score, so the
/// dominance principle can never be violated.
inline SortingTable consistent_sorting_table(Rng& rng, std::size_t maxObjects = 10, std::size_t maxCriteria = 3,
                                             int maxClasses = 3) {
  SortingTable t = random_sorting_table(rng, maxObjects, maxCriteria, maxClasses);
  std::vector<double> scores;
  for (const auto& row : t.values) {
    double s = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) s += t.criteria[j].direction == Direction::Cost ? -row[j] : row[j];
    scores.push_back(s);
  }
  const auto [lo, hi] = std::minmax_element(scores.begin(), scores.end());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const double unit = *hi > *lo ? (scores[i] - *lo) / (*hi - *lo) : 0.0;
    t.classes[i] = 1 + std::min(t.classCount - 1, static_cast<int>(unit * t.classCount));
  }
  return t;
}

}  // namespace gmcdm::testing
