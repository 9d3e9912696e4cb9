#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmcdm/model.hpp"

namespace gmcdm {

/// Output of any ranking method. `order` is best first, sorted by score
/// descending with ties broken by ascending alternative id.
struct RankResult {
  std::string method;
  std::map<std::string, double> scores;
  std::vector<std::string> order;
  nlohmann::json diagnostics = nlohmann::json::object();
};

std::vector<std::string> order_by_scores(std::span<const std::string> alternatives,
                                         std::span<const double> scores);

RankResult make_rank_result(std::string method, std::span<const std::string> alternatives,
                            std::span<const double> scores,
                            nlohmann::json diagnostics = nlohmann::json::object());

struct PreferenceFunction {
  enum class Shape { Usual, Linear };

  Shape shape = Shape::Usual;
  double q = 0.0;  // indifference threshold (linear)
  double p = 0.0;  // preference threshold (linear)

  static PreferenceFunction usual() { return {}; }
  static PreferenceFunction linear(double q, double p);
};

/// Preference degree in [0,1] for a value difference d. Throws BadThresholds
/// for a linear shape with q < 0 or q >= p.
double pairwise_preference(double d, const PreferenceFunction& f);

RankResult weighted_sum_rank(const NumericMatrix& normalized, std::span<const double> weights);

struct FlowTable {
  std::vector<double> positive;
  std::vector<double> negative;
  std::vector<double> net;
};

/// PROMETHEE II flows. An empty `prefs` means the usual function everywhere.
FlowTable promethee2_flows(const NumericMatrix& normalized, std::span<const double> weights,
                           std::span<const PreferenceFunction> prefs = {});
RankResult promethee2_rank(const NumericMatrix& normalized, std::span<const double> weights,
                           std::span<const PreferenceFunction> prefs = {});

struct SirFlows {
  std::vector<double> superiority;
  std::vector<double> inferiority;
  std::vector<double> net;
};

SirFlows sir_flows(const NumericMatrix& normalized, std::span<const double> weights,
                   std::span<const PreferenceFunction> prefs = {});
/// Ranks by n-flow = superiority - inferiority.
RankResult sir_rank(const NumericMatrix& normalized, std::span<const double> weights,
                    std::span<const PreferenceFunction> prefs = {});

struct OutrankingRelation {
  std::vector<std::vector<double>> concordance;
  std::vector<std::vector<double>> discordance;
  std::vector<std::vector<bool>> outranks;  // outranks[a][b]: a S b
};

OutrankingRelation electre1_relation(const NumericMatrix& normalized, std::span<const double> weights,
                                     double concordanceThreshold, double discordanceThreshold);
/// Total order by net qualification (outranked count minus outranking count).
RankResult electre1_rank(const NumericMatrix& normalized, std::span<const double> weights,
                         double concordanceThreshold, double discordanceThreshold);

}  // namespace gmcdm
