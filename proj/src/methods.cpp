#include "gmcdm/methods.hpp"

#include <algorithm>

#include "gmcdm/error.hpp"
#include "gmcdm/fuzzy.hpp"
#include "gmcdm/rough.hpp"

namespace gmcdm {

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> kMethods = {
      "weighted_sum", "promethee2", "sir", "electre1", "expected_utility",
      "monte_carlo_stability", "fsd", "ifwa_group", "drsa"};
  return kMethods;
}

bool is_known_method(std::string_view method) {
  const auto& all = known_methods();
  return std::find(all.begin(), all.end(), method) != all.end();
}

RankResult run_method(std::string_view method, const GroupProblem& problem, const DecisionMatrix& plane,
                      const MethodOptions& options) {
  if (!is_known_method(method)) throw Error(ErrorCode::UnknownMethod, std::string(method));

  const std::vector<double> weights = normalize_weights(criterion_weight_vector(problem, plane));
  auto scored = [&] {
    const auto dirs = problem.directions();
    return unit_scale_matrix(crisp_values(problem, plane), dirs);
  };

  if (method == "weighted_sum") return weighted_sum_rank(scored(), weights);
  if (method == "promethee2") return promethee2_rank(scored(), weights, options.preferences);
  if (method == "sir") return sir_rank(scored(), weights, options.preferences);
  if (method == "electre1") {
    return electre1_rank(scored(), weights, options.concordanceThreshold, options.discordanceThreshold);
  }
  if (method == "expected_utility") return eu_rank(problem, plane, options.utility, weights);
  if (method == "fsd") return fsd_rank(problem, plane, weights);
  if (method == "monte_carlo_stability") {
    return monte_carlo_rank(problem, plane, weights, options.samples, options.seed);
  }
  if (method == "drsa") return drsa_rank(problem, plane, options.maxConditions);

  // ifwa_group on a single plane: the plane is its own group.
  GroupProblem single = problem;
  DecisionMatrix only = plane;
  if (only.maker.empty()) only.maker = "group";
  single.makers = {{only.maker, 1.0}};
  single.matrices = {std::move(only)};
  return ifwa_group_rank(single);
}

}  // namespace gmcdm
