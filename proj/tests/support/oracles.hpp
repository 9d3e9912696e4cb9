#pragma once

// Independent reference computations used as test oracles.

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gmcdm/classic.hpp"
#include "gmcdm/model.hpp"
#include "gmcdm/rough.hpp"

namespace gmcdm::testing {

/// Exact rank-position probabilities by enumerating every joint outcome of
/// the independent cells; each realization is ranked exactly as one Monte
/// Carlo sample would be.
inline std::vector<std::vector<double>> enumerate_rank_frequencies(const GroupProblem& problem,
                                                                   const DecisionMatrix& matrix,
                                                                   std::span<const double> weights) {
  const auto alts = problem.alternative_ids();
  const auto crits = problem.criterion_ids();
  const auto dirs = problem.directions();
  const std::size_t n = alts.size(), c = crits.size();
  std::vector<std::vector<DiscreteDistribution>> grid(n, std::vector<DiscreteDistribution>(c));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t j = 0; j < c; ++j) {
      const CellValue& cell = *matrix.find(alts[a], crits[j]);
      grid[a][j] = cell.kind() == CellKind::Crisp ? DiscreteDistribution::degenerate(cell.crisp()) : cell.dist();
    }
  }
  std::vector<std::vector<double>> freq(n, std::vector<double>(n, 0.0));
  NumericMatrix realization{alts, crits, std::vector<std::vector<double>>(n, std::vector<double>(c))};
  std::vector<std::size_t> digit(n * c, 0);
  while (true) {
    double prob = 1.0;
    for (std::size_t k = 0; k < n * c; ++k) {
      const Outcome& o = grid[k / c][k % c].outcomes[digit[k]];
      realization.values[k / c][k % c] = o.value;
      prob *= o.probability;
    }
    const auto order = weighted_sum_rank(normalize_crisp_matrix(realization, dirs), weights).order;
    for (std::size_t p = 0; p < n; ++p) {
      const auto a = std::find(alts.begin(), alts.end(), order[p]) - alts.begin();
      freq[a][p] += prob;
    }
    std::size_t k = 0;
    while (k < n * c && ++digit[k] == grid[k / c][k % c].outcomes.size()) digit[k++] = 0;
    if (k == n * c) break;
  }
  return freq;
}

struct BruteApproximation {
  std::set<std::string> lower;
  std::set<std::string> upper;
};

/// Approximations of a class union by direct pairwise checks. For Cl_t^>=,
/// x is in the lower approximation iff every object at least as good as x
/// belongs to the union, and in the upper approximation iff some object x is
/// at least as good as belongs to it. Cl_t^<= mirrors this.
inline BruteApproximation brute_approximation(const SortingTable& t, UnionKind kind, int cls) {
  auto better_or_equal = [&](std::size_t y, std::size_t x) {
    for (std::size_t j = 0; j < t.criteria.size(); ++j) {
      const double vy = t.values[y][j], vx = t.values[x][j];
      if (t.criteria[j].direction == Direction::Benefit ? vy < vx : vy > vx) return false;
    }
    return true;
  };
  auto in_union = [&](std::size_t i) {
    return kind == UnionKind::AtLeast ? t.classes[i] >= cls : t.classes[i] <= cls;
  };
  BruteApproximation out;
  for (std::size_t x = 0; x < t.objects.size(); ++x) {
    bool lower = true, upper = false;
    for (std::size_t y = 0; y < t.objects.size(); ++y) {
      const bool coneLower = kind == UnionKind::AtLeast ? better_or_equal(y, x) : better_or_equal(x, y);
      const bool coneUpper = kind == UnionKind::AtLeast ? better_or_equal(x, y) : better_or_equal(y, x);
      if (coneLower && !in_union(y)) lower = false;
      if (coneUpper && in_union(y)) upper = true;
    }
    if (lower) out.lower.insert(t.objects[x]);
    if (upper) out.upper.insert(t.objects[x]);
  }
  return out;
}

}  // namespace gmcdm::testing
