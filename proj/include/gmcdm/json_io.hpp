#pragma once

#include <nlohmann/json.hpp>

#include "gmcdm/classic.hpp"
#include "gmcdm/group.hpp"
#include "gmcdm/model.hpp"
#include "gmcdm/rough.hpp"
#include "gmcdm/stochastic.hpp"
#include "gmcdm/uncertainty.hpp"

namespace gmcdm {

using json = nlohmann::json;

// Problem file codec. Parsing is strict: unknown or mistyped fields raise
// Error(ParseError); semantic checks are left to validate_problem.

/// Reads {"problem": {...}}. Judgments may be absent (session skeletons).
GroupProblem problem_from_json(const json& doc);
json problem_to_json(const GroupProblem& problem);

/// One judgment object {"maker", "criterionWeights", "cells"}; when
/// `maker` is given the "maker" field is optional but must match.
DecisionMatrix judgment_from_json(const json& j, const std::string& maker = {});
json judgment_to_json(const DecisionMatrix& matrix);

CellValue cell_from_json(const json& j);
json cell_to_json(const CellValue& cell);

json to_json(const Ifv& v);
json to_json(const ValidationReport& report);
json to_json(const EnvironmentReport& report);
json to_json(const RankResult& result);  // method, scores, order, diagnostics
json rank_summary(const RankResult& result);  // method, scores, order
json to_json(const ConsensusReport& report);
json to_json(const WhatIfResult& result);
json to_json(const RankFrequencies& freq);
json to_json(const Approximation& approx);
json to_json(const DecisionRule& rule, const SortingTable& table);

}  // namespace gmcdm
