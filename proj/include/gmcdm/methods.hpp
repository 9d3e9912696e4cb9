#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmcdm/classic.hpp"
#include "gmcdm/model.hpp"
#include "gmcdm/stochastic.hpp"

namespace gmcdm {

// Tuning shared by every method run through the registry.
struct MethodOptions {
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  UtilityFunction utility = UtilityFunction::linear();
  double concordanceThreshold = 0.5;
  double discordanceThreshold = 0.5;
  std::size_t maxConditions = 3;
  std::vector<PreferenceFunction> preferences;  // empty: usual everywhere
};

const std::vector<std::string>& known_methods();
bool is_known_method(std::string_view method);

/// Runs `method` on one decision plane of `problem` (an individual maker's
/// matrix or the aggregated group matrix), using that plane's criterion
/// weights. Crisp methods score cells through unit_scale_matrix. Throws
/// UnknownMethod, or the method's own error when it does not apply.
RankResult run_method(std::string_view method, const GroupProblem& problem, const DecisionMatrix& plane,
                      const MethodOptions& options);

}  // namespace gmcdm
