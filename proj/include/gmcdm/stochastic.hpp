#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmcdm/classic.hpp"
#include "gmcdm/model.hpp"

namespace gmcdm {

struct UtilityFunction {
  enum class Shape { Linear, Exponential };

  Shape shape = Shape::Linear;
  double alpha = 0.0;  // risk aversion, exponential only

  static UtilityFunction linear() { return {}; }
  static UtilityFunction exponential(double alpha);

  /// Utility of a value already rescaled to [0,1]; u(0) = 0 and u(1) = 1.
  double operator()(double unit) const;
};

/// Expected utility after rescaling outcomes from [lo, hi] to [0,1].
/// Throws BadRange unless lo < hi, OutOfRange if an outcome lies outside.
double expected_utility(const DiscreteDistribution& d, const UtilityFunction& u, double lo, double hi);

/// Every cell (crisp cells as degenerate distributions) reduced to its
/// expected utility over the criterion's observed outcome range; cost
/// criteria use u(1 - x'). A criterion with a single observed value maps to
/// 0.5. Throws NonStochasticCell for IFV cells.
NumericMatrix expected_utility_matrix(const GroupProblem& problem, const DecisionMatrix& matrix,
                                      const UtilityFunction& u);

RankResult eu_rank(const GroupProblem& problem, const DecisionMatrix& matrix, const UtilityFunction& u,
                   std::span<const double> criterionWeights);

enum class FsdOutcome { ADominates, BDominates, None, Equal };

std::string_view to_string(FsdOutcome f);

/// First-order stochastic dominance by CDF comparison on the merged support.
FsdOutcome fsd_check(const DiscreteDistribution& a, const DiscreteDistribution& b);

/// Net FSD wins per criterion (cost criteria reflected), weighted across
/// criteria and scaled by 1/(n-1).
RankResult fsd_rank(const GroupProblem& problem, const DecisionMatrix& matrix,
                    std::span<const double> criterionWeights);

/// Counter-based generator: a uniform draw in [0,1) that depends only on the
/// (seed, alternative, criterion, sample) key, so draws are independent of
/// evaluation order.
double substream_uniform(std::uint64_t seed, std::string_view alternative, std::string_view criterion,
                         std::uint64_t sample);

/// Inverse-CDF draw from a distribution for a uniform u in [0,1).
double sample_outcome(const DiscreteDistribution& d, double u);

struct RankFrequencies {
  std::vector<std::string> alternatives;
  // frequency[a][p]: share of samples placing alternative a at position p.
  std::vector<std::vector<double>> frequency;
};

RankFrequencies monte_carlo_stability(const GroupProblem& problem, const DecisionMatrix& matrix,
                                      std::span<const double> criterionWeights, std::size_t samples,
                                      std::uint64_t seed);

/// Scores alternatives by expected normalized Borda position from the
/// rank-frequency matrix; the matrix itself lands in diagnostics.
RankResult monte_carlo_rank(const GroupProblem& problem, const DecisionMatrix& matrix,
                            std::span<const double> criterionWeights, std::size_t samples,
                            std::uint64_t seed);

}  // namespace gmcdm
