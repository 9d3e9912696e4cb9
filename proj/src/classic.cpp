#include "gmcdm/classic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmcdm/error.hpp"

namespace gmcdm {

std::vector<std::string> order_by_scores(std::span<const std::string> alternatives,
                                         std::span<const double> scores) {
  if (alternatives.size() != scores.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scores vs alternatives");
  }
  std::vector<std::size_t> idx(alternatives.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return alternatives[a] < alternatives[b];
  });
  std::vector<std::string> order;
  order.reserve(idx.size());
  for (auto i : idx) order.push_back(alternatives[i]);
  return order;
}

RankResult make_rank_result(std::string method, std::span<const std::string> alternatives,
                            std::span<const double> scores, nlohmann::json diagnostics) {
  RankResult r;
  r.method = std::move(method);
  for (std::size_t i = 0; i < alternatives.size(); ++i) r.scores[alternatives[i]] = scores[i];
  r.order = order_by_scores(alternatives, scores);
  r.diagnostics = std::move(diagnostics);
  return r;
}

PreferenceFunction PreferenceFunction::linear(double q, double p) {
  if (!(q >= 0.0) || !(p > q)) throw Error(ErrorCode::BadThresholds, "linear requires 0 <= q < p");
  return {Shape::Linear, q, p};
}

double pairwise_preference(double d, const PreferenceFunction& f) {
  if (f.shape == PreferenceFunction::Shape::Usual) return d > 0.0 ? 1.0 : 0.0;
  if (!(f.q >= 0.0) || !(f.p > f.q)) throw Error(ErrorCode::BadThresholds, "linear requires 0 <= q < p");
  if (d <= f.q) return 0.0;
  if (d <= f.p) return (d - f.q) / (f.p - f.q);
  return 1.0;
}

namespace {

void check_shape(const NumericMatrix& m, std::span<const double> weights) {
  if (weights.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "weights vs criteria");
  for (const auto& row : m.values) {
    if (row.size() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "ragged matrix");
  }
  if (m.values.size() != m.rows()) throw Error(ErrorCode::DimensionMismatch, "rows vs alternatives");
}

void check_pairwise(const NumericMatrix& m, std::span<const double> weights,
                    std::span<const PreferenceFunction> prefs) {
  check_shape(m, weights);
  if (!prefs.empty() && prefs.size() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "preference functions vs criteria");
  }
  if (m.rows() < 2) throw Error(ErrorCode::DimensionMismatch, "at least two alternatives required");
}

const PreferenceFunction& pref_at(std::span<const PreferenceFunction> prefs, std::size_t j) {
  static const PreferenceFunction kUsual = PreferenceFunction::usual();
  return prefs.empty() ? kUsual : prefs[j];
}

// Per-criterion preference degree P_j(r_aj - r_bj).
double criterion_preference(const NumericMatrix& m, std::span<const PreferenceFunction> prefs,
                            std::size_t j, std::size_t a, std::size_t b) {
  return pairwise_preference(m.at(a, j) - m.at(b, j), pref_at(prefs, j));
}

nlohmann::json by_alternative(const NumericMatrix& m, const std::vector<double>& v) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t i = 0; i < m.rows(); ++i) out[m.alternatives[i]] = v[i];
  return out;
}

}  // namespace

RankResult weighted_sum_rank(const NumericMatrix& normalized, std::span<const double> weights) {
  check_shape(normalized, weights);
  std::vector<double> scores(normalized.rows(), 0.0);
  for (std::size_t a = 0; a < normalized.rows(); ++a) {
    for (std::size_t j = 0; j < normalized.cols(); ++j) scores[a] += weights[j] * normalized.at(a, j);
  }
  return make_rank_result("weighted_sum", normalized.alternatives, scores);
}

FlowTable promethee2_flows(const NumericMatrix& normalized, std::span<const double> weights,
                           std::span<const PreferenceFunction> prefs) {
  check_pairwise(normalized, weights, prefs);
  const std::size_t n = normalized.rows();
  FlowTable flows{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      double pi = 0.0;
      for (std::size_t j = 0; j < normalized.cols(); ++j) {
        pi += weights[j] * criterion_preference(normalized, prefs, j, a, b);
      }
      flows.positive[a] += pi;
      flows.negative[b] += pi;
    }
  }
  const double scale = 1.0 / static_cast<double>(n - 1);
  for (std::size_t a = 0; a < n; ++a) {
    flows.positive[a] *= scale;
    flows.negative[a] *= scale;
    flows.net[a] = flows.positive[a] - flows.negative[a];
  }
  return flows;
}

RankResult promethee2_rank(const NumericMatrix& normalized, std::span<const double> weights,
                           std::span<const PreferenceFunction> prefs) {
  const FlowTable flows = promethee2_flows(normalized, weights, prefs);
  nlohmann::json diag = {{"positiveFlow", by_alternative(normalized, flows.positive)},
                         {"negativeFlow", by_alternative(normalized, flows.negative)}};
  return make_rank_result("promethee2", normalized.alternatives, flows.net, std::move(diag));
}

SirFlows sir_flows(const NumericMatrix& normalized, std::span<const double> weights,
                   std::span<const PreferenceFunction> prefs) {
  check_pairwise(normalized, weights, prefs);
  const std::size_t n = normalized.rows();
  SirFlows flows{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  for (std::size_t j = 0; j < normalized.cols(); ++j) {
    for (std::size_t a = 0; a < n; ++a) {
      double superiority = 0.0;
      double inferiority = 0.0;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        superiority += criterion_preference(normalized, prefs, j, a, b);
        inferiority += criterion_preference(normalized, prefs, j, b, a);
      }
      flows.superiority[a] += weights[j] * superiority;
      flows.inferiority[a] += weights[j] * inferiority;
    }
  }
  for (std::size_t a = 0; a < n; ++a) flows.net[a] = flows.superiority[a] - flows.inferiority[a];
  return flows;
}

RankResult sir_rank(const NumericMatrix& normalized, std::span<const double> weights,
                    std::span<const PreferenceFunction> prefs) {
  const SirFlows flows = sir_flows(normalized, weights, prefs);
  nlohmann::json diag = {{"superiorityFlow", by_alternative(normalized, flows.superiority)},
                         {"inferiorityFlow", by_alternative(normalized, flows.inferiority)}};
  return make_rank_result("sir", normalized.alternatives, flows.net, std::move(diag));
}

OutrankingRelation electre1_relation(const NumericMatrix& normalized, std::span<const double> weights,
                                     double concordanceThreshold, double discordanceThreshold) {
  auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(concordanceThreshold) || !in_unit(discordanceThreshold)) {
    throw Error(ErrorCode::BadThresholds, "ELECTRE thresholds must lie in [0,1]");
  }
  check_pairwise(normalized, weights, {});
  const std::size_t n = normalized.rows();
  OutrankingRelation rel;
  rel.concordance.assign(n, std::vector<double>(n, 0.0));
  rel.discordance.assign(n, std::vector<double>(n, 0.0));
  rel.outranks.assign(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      double c = 0.0;
      double d = 0.0;
      for (std::size_t j = 0; j < normalized.cols(); ++j) {
        if (normalized.at(a, j) >= normalized.at(b, j)) c += weights[j];
        d = std::max(d, normalized.at(b, j) - normalized.at(a, j));
      }
      rel.concordance[a][b] = c;
      rel.discordance[a][b] = d;
      rel.outranks[a][b] = c >= concordanceThreshold && d <= discordanceThreshold;
    }
  }
  return rel;
}

RankResult electre1_rank(const NumericMatrix& normalized, std::span<const double> weights,
                         double concordanceThreshold, double discordanceThreshold) {
  const auto rel = electre1_relation(normalized, weights, concordanceThreshold, discordanceThreshold);
  const std::size_t n = normalized.rows();
  std::vector<double> score(n, 0.0);
  nlohmann::json outranking = nlohmann::json::object();
  for (std::size_t a = 0; a < n; ++a) {
    nlohmann::json beaten = nlohmann::json::array();
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b || !rel.outranks[a][b]) continue;
      score[a] += 1.0;
      score[b] -= 1.0;
      beaten.push_back(normalized.alternatives[b]);
    }
    outranking[normalized.alternatives[a]] = std::move(beaten);
  }
  nlohmann::json diag = {{"outranks", std::move(outranking)},
                         {"concordanceThreshold", concordanceThreshold},
                         {"discordanceThreshold", discordanceThreshold}};
  return make_rank_result("electre1", normalized.alternatives, score, std::move(diag));
}

}  // namespace gmcdm
