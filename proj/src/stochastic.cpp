#include "gmcdm/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "gmcdm/error.hpp"

namespace gmcdm {

namespace {

constexpr double kCdfTolerance = 1e-12;

DiscreteDistribution cell_distribution(const DecisionMatrix& matrix, const std::string& alt,
                                       const std::string& crit) {
  const CellValue* cell = matrix.find(alt, crit);
  const std::string where = "(" + alt + "," + crit + ")";
  if (cell == nullptr) throw Error(ErrorCode::MissingCell, where);
  switch (cell->kind()) {
    case CellKind::Crisp: return DiscreteDistribution::degenerate(cell->crisp());
    case CellKind::Dist: return cell->dist().canonical();
    case CellKind::Ifs: break;
  }
  throw Error(ErrorCode::NonStochasticCell, where);
}

// grid[a][c] as canonical distributions, problem order.
std::vector<std::vector<DiscreteDistribution>> distribution_grid(const GroupProblem& problem,
                                                                 const DecisionMatrix& matrix) {
  std::vector<std::vector<DiscreteDistribution>> grid;
  for (const auto& a : problem.alternatives) {
    auto& row = grid.emplace_back();
    for (const auto& c : problem.criteria) row.push_back(cell_distribution(matrix, a.id, c.id));
  }
  return grid;
}

DiscreteDistribution reflect(const DiscreteDistribution& d) {
  DiscreteDistribution out;
  for (const auto& o : d.outcomes) out.outcomes.push_back({-o.value, o.probability});
  return out.canonical();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

UtilityFunction UtilityFunction::exponential(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorCode::BadUtility, "exponential utility requires alpha > 0");
  }
  return {Shape::Exponential, alpha};
}

double UtilityFunction::operator()(double unit) const {
  if (shape == Shape::Linear) return unit;
  if (!(alpha > 0.0)) throw Error(ErrorCode::BadUtility, "exponential utility requires alpha > 0");
  return std::expm1(-alpha * unit) / std::expm1(-alpha);
}

double expected_utility(const DiscreteDistribution& d, const UtilityFunction& u, double lo, double hi) {
  if (!(lo < hi)) throw Error(ErrorCode::BadRange, "expected utility needs lo < hi");
  double total = 0.0;
  for (const auto& o : d.outcomes) {
    if (o.value < lo || o.value > hi) throw Error(ErrorCode::OutOfRange, "outcome outside utility range");
    total += o.probability * u((o.value - lo) / (hi - lo));
  }
  return total;
}

NumericMatrix expected_utility_matrix(const GroupProblem& problem, const DecisionMatrix& matrix,
                                      const UtilityFunction& u) {
  const auto grid = distribution_grid(problem, matrix);
  NumericMatrix out;
  out.alternatives = problem.alternative_ids();
  out.criteria = problem.criterion_ids();
  out.values.assign(out.rows(), std::vector<double>(out.cols(), 0.5));
  for (std::size_t c = 0; c < out.cols(); ++c) {
    double lo = grid[0][c].min_value();
    double hi = grid[0][c].max_value();
    for (std::size_t a = 0; a < out.rows(); ++a) {
      lo = std::min(lo, grid[a][c].min_value());
      hi = std::max(hi, grid[a][c].max_value());
    }
    if (lo == hi) continue;
    const bool cost = problem.criteria[c].direction == Direction::Cost;
    for (std::size_t a = 0; a < out.rows(); ++a) {
      double eu = 0.0;
      for (const auto& o : grid[a][c].outcomes) {
        const double unit = (o.value - lo) / (hi - lo);
        eu += o.probability * u(cost ? 1.0 - unit : unit);
      }
      out.values[a][c] = eu;
    }
  }
  return out;
}

RankResult eu_rank(const GroupProblem& problem, const DecisionMatrix& matrix, const UtilityFunction& u,
                   std::span<const double> criterionWeights) {
  const NumericMatrix reduced = expected_utility_matrix(problem, matrix, u);
  RankResult r = weighted_sum_rank(reduced, criterionWeights);
  r.method = "expected_utility";
  nlohmann::json eu = nlohmann::json::object();
  for (std::size_t a = 0; a < reduced.rows(); ++a) {
    for (std::size_t c = 0; c < reduced.cols(); ++c) eu[reduced.alternatives[a]][reduced.criteria[c]] = reduced.at(a, c);
  }
  r.diagnostics = {{"expectedUtility", std::move(eu)},
                   {"utility", u.shape == UtilityFunction::Shape::Linear ? "linear" : "exponential"}};
  if (u.shape == UtilityFunction::Shape::Exponential) r.diagnostics["alpha"] = u.alpha;
  return r;
}

std::string_view to_string(FsdOutcome f) {
  switch (f) {
    case FsdOutcome::ADominates: return "a_dominates";
    case FsdOutcome::BDominates: return "b_dominates";
    case FsdOutcome::None: return "none";
    case FsdOutcome::Equal: return "equal";
  }
  return "unknown";
}

FsdOutcome fsd_check(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  const auto ca = a.canonical();
  const auto cb = b.canonical();
  std::set<double> support;
  for (const auto& o : ca.outcomes) support.insert(o.value);
  for (const auto& o : cb.outcomes) support.insert(o.value);

  bool aBelowSomewhere = false;  // CDF_a < CDF_b at some t
  bool bBelowSomewhere = false;
  std::size_t ia = 0;
  std::size_t ib = 0;
  double cdfA = 0.0;
  double cdfB = 0.0;
  for (double t : support) {
    while (ia < ca.outcomes.size() && ca.outcomes[ia].value <= t) cdfA += ca.outcomes[ia++].probability;
    while (ib < cb.outcomes.size() && cb.outcomes[ib].value <= t) cdfB += cb.outcomes[ib++].probability;
    if (cdfA < cdfB - kCdfTolerance) aBelowSomewhere = true;
    if (cdfB < cdfA - kCdfTolerance) bBelowSomewhere = true;
  }
  if (!aBelowSomewhere && !bBelowSomewhere) return FsdOutcome::Equal;
  if (aBelowSomewhere && !bBelowSomewhere) return FsdOutcome::ADominates;
  if (bBelowSomewhere && !aBelowSomewhere) return FsdOutcome::BDominates;
  return FsdOutcome::None;
}

RankResult fsd_rank(const GroupProblem& problem, const DecisionMatrix& matrix,
                    std::span<const double> criterionWeights) {
  const auto grid = distribution_grid(problem, matrix);
  const std::size_t n = problem.alternatives.size();
  const std::size_t m = problem.criteria.size();
  if (criterionWeights.size() != m) throw Error(ErrorCode::DimensionMismatch, "weights vs criteria");
  if (n < 2) throw Error(ErrorCode::DimensionMismatch, "at least two alternatives required");

  std::vector<double> score(n, 0.0);
  nlohmann::json dominance = nlohmann::json::object();
  for (std::size_t c = 0; c < m; ++c) {
    const bool cost = problem.criteria[c].direction == Direction::Cost;
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const auto da = cost ? reflect(grid[a][c]) : grid[a][c];
        const auto db = cost ? reflect(grid[b][c]) : grid[b][c];
        const FsdOutcome f = fsd_check(da, db);
        std::size_t winner = n;
        std::size_t loser = n;
        if (f == FsdOutcome::ADominates) { winner = a; loser = b; }
        if (f == FsdOutcome::BDominates) { winner = b; loser = a; }
        if (winner == n) continue;
        score[winner] += criterionWeights[c];
        score[loser] -= criterionWeights[c];
        pairs.push_back({problem.alternatives[winner].id, problem.alternatives[loser].id});
      }
    }
    dominance[problem.criteria[c].id] = std::move(pairs);
  }
  for (double& s : score) s /= static_cast<double>(n - 1);
  return make_rank_result("fsd", problem.alternative_ids(), score, {{"dominates", std::move(dominance)}});
}

double substream_uniform(std::uint64_t seed, std::string_view alternative, std::string_view criterion,
                         std::uint64_t sample) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ fnv1a(alternative));
  h = splitmix64(h ^ fnv1a(criterion));
  h = splitmix64(h ^ sample);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

double sample_outcome(const DiscreteDistribution& d, double u) {
  double cumulative = 0.0;
  for (const auto& o : d.outcomes) {
    cumulative += o.probability;
    if (u < cumulative) return o.value;
  }
  return d.outcomes.back().value;
}

RankFrequencies monte_carlo_stability(const GroupProblem& problem, const DecisionMatrix& matrix,
                                      std::span<const double> criterionWeights, std::size_t samples,
                                      std::uint64_t seed) {
  if (samples < 1) throw Error(ErrorCode::OutOfRange, "samples must be at least 1");
  const auto grid = distribution_grid(problem, matrix);
  const auto dirs = problem.directions();
  const std::size_t n = problem.alternatives.size();

  RankFrequencies out;
  out.alternatives = problem.alternative_ids();
  out.frequency.assign(n, std::vector<double>(n, 0.0));
  std::vector<std::vector<std::size_t>> counts(n, std::vector<std::size_t>(n, 0));

  NumericMatrix realization;
  realization.alternatives = out.alternatives;
  realization.criteria = problem.criterion_ids();
  realization.values.assign(n, std::vector<double>(realization.criteria.size(), 0.0));
  std::map<std::string, std::size_t> position;
  for (std::size_t a = 0; a < n; ++a) position[out.alternatives[a]] = a;

  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t c = 0; c < realization.criteria.size(); ++c) {
        const auto& d = grid[a][c];
        realization.values[a][c] =
            d.outcomes.size() == 1
                ? d.outcomes.front().value
                : sample_outcome(d, substream_uniform(seed, out.alternatives[a], realization.criteria[c], s));
      }
    }
    const RankResult r = weighted_sum_rank(normalize_crisp_matrix(realization, dirs), criterionWeights);
    for (std::size_t p = 0; p < n; ++p) ++counts[position[r.order[p]]][p];
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t p = 0; p < n; ++p) {
      out.frequency[a][p] = static_cast<double>(counts[a][p]) / static_cast<double>(samples);
    }
  }
  return out;
}

RankResult monte_carlo_rank(const GroupProblem& problem, const DecisionMatrix& matrix,
                            std::span<const double> criterionWeights, std::size_t samples,
                            std::uint64_t seed) {
  const RankFrequencies freq = monte_carlo_stability(problem, matrix, criterionWeights, samples, seed);
  const std::size_t n = freq.alternatives.size();
  std::vector<double> score(n, 0.0);
  nlohmann::json table = nlohmann::json::object();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t p = 0; p < n; ++p) {
      score[a] += freq.frequency[a][p] * static_cast<double>(n - 1 - p);
    }
    if (n > 1) score[a] /= static_cast<double>(n - 1);
    table[freq.alternatives[a]] = freq.frequency[a];
  }
  return make_rank_result("monte_carlo_stability", freq.alternatives, score,
                          {{"rankFrequency", std::move(table)}, {"samples", samples}, {"seed", seed}});
}

}  // namespace gmcdm
