#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gmcdm/methods.hpp"
#include "gmcdm/model.hpp"

namespace gmcdm {

/// Projects every maker's plane onto one group plane: crisp cells by weighted
/// mean, IFV cells by IFWA, distributions by probability mixture, criterion
/// weights by maker-weighted mean (renormalized). Contributions are combined
/// in maker-id order so the result does not depend on maker listing order.
/// Throws MixedCellKinds when makers disagree on a cell's kind.
DecisionMatrix aggregate_group_matrix(const GroupProblem& problem);

/// Share of discordant pairs between two strict orders of the same ids.
double kendall_distance(std::span<const std::string> orderA, std::span<const std::string> orderB);

struct ConsensusOptions {
  double conflictThreshold = 0.5;
  double weightProbe = 0.1;
};

struct Conflict {
  std::string maker;
  std::string criterion;  // weight probe that most reduces the maker's distance
  double severity = 0.0;
  double probedDistance = 0.0;
};

struct ConsensusReport {
  std::string method;
  std::vector<std::string> groupOrder;
  std::map<std::string, std::vector<std::string>> individualOrders;
  std::map<std::string, double> perMaker;
  double consensusIndex = 1.0;
  std::vector<Conflict> conflicts;
};

ConsensusReport consensus(const GroupProblem& problem, std::string_view method, const MethodOptions& options,
                          const ConsensusOptions& consensusOptions = {});

/// Adds delta to weights[index] and rescales the others so the total stays 1.
/// Throws WeightOutOfRange if the shifted weight leaves [0,1].
std::vector<double> shift_weight(std::span<const double> weights, std::size_t index, double delta);

struct WhatIfResult {
  std::string criterion;
  double delta = 0.0;
  std::map<std::string, double> adjustedWeights;
  std::vector<std::string> baselineOrder;
  std::vector<std::string> newOrder;
  bool flipped = false;
  std::optional<double> minFlipDelta;
  std::optional<double> flipWeight;  // criterion weight at minFlipDelta
};

WhatIfResult whatif_weights(const GroupProblem& problem, std::string_view method, const std::string& criterion,
                            double delta, const MethodOptions& options);

/// Smallest |delta| (to 1e-4) on the criterion's group weight that changes
/// the top alternative, searched over the feasible interval; nullopt if no
/// feasible delta does.
std::optional<double> min_weight_flip(const GroupProblem& problem, std::string_view method,
                                      const std::string& criterion, const MethodOptions& options);

}  // namespace gmcdm
