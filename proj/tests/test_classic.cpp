#include <gtest/gtest.h>

#include <numeric>

#include "gmcdm/classic.hpp"
#include "gmcdm/error.hpp"
#include "support/generators.hpp"

using namespace gmcdm;
using namespace gmcdm::testing;

namespace {

NumericMatrix matrix(std::vector<std::vector<double>> rows) {
  NumericMatrix m;
  for (std::size_t i = 0; i < rows.size(); ++i) m.alternatives.push_back(std::string(1, char('a' + i)));
  for (std::size_t j = 0; j < rows.front().size(); ++j) m.criteria.push_back("c" + std::to_string(j + 1));
  m.values = std::move(rows);
  return m;
}

NumericMatrix random_matrix(Rng& rng, std::size_t n, std::size_t c) {
  std::vector<std::vector<double>> rows(n, std::vector<double>(c));
  for (auto& row : rows)
    for (auto& v : row) v = std::round(uniform(rng) * 20) / 20;  // coarse grid makes ties common
  return matrix(rows);
}

// Straight from the definition: pi(a,b) = sum_j w_j P_j(a_j - b_j).
double oracle_pi(const NumericMatrix& m, std::span<const double> w, std::size_t a, std::size_t b) {
  double s = 0.0;
  for (std::size_t j = 0; j < m.cols(); ++j) s += w[j] * (m.at(a, j) - m.at(b, j) > 0 ? 1.0 : 0.0);
  return s;
}

}  // namespace

TEST(WeightedSum, SymmetricTieBreaksById) {
  const double w[] = {0.5, 0.5};
  const auto r = weighted_sum_rank(matrix({{1, 0}, {0, 1}}), w);
  EXPECT_DOUBLE_EQ(r.scores.at("a"), 0.5);
  EXPECT_DOUBLE_EQ(r.scores.at("b"), 0.5);
  EXPECT_EQ(r.order, (std::vector<std::string>{"a", "b"}));
}

TEST(WeightedSum, DominantAlternativeFirst) {
  const double w[] = {0.5, 0.5};
  const auto r = weighted_sum_rank(matrix({{1, 1}, {0, 0}}), w);
  EXPECT_DOUBLE_EQ(r.scores.at("a"), 1.0);
  EXPECT_EQ(r.order.front(), "a");
}

TEST(WeightedSum, GoldenExample) {
  const double w[] = {0.6, 0.4};
  const auto r = weighted_sum_rank(matrix({{0.8, 0.2}, {0.5, 0.9}}), w);
  EXPECT_NEAR(r.scores.at("a"), 0.56, 1e-12);
  EXPECT_NEAR(r.scores.at("b"), 0.66, 1e-12);
  EXPECT_EQ(r.order, (std::vector<std::string>{"b", "a"}));
}

TEST(Preference, UsualAndLinear) {
  EXPECT_EQ(pairwise_preference(-0.3, PreferenceFunction::usual()), 0.0);
  EXPECT_EQ(pairwise_preference(0.2, PreferenceFunction::usual()), 1.0);
  EXPECT_DOUBLE_EQ(pairwise_preference(0.25, PreferenceFunction::linear(0, 0.5)), 0.5);
  EXPECT_EQ(pairwise_preference(0.4, PreferenceFunction::linear(0.1, 0.3)), 1.0);
  EXPECT_EQ(pairwise_preference(0.05, PreferenceFunction::linear(0.1, 0.3)), 0.0);
}

TEST(Preference, BadThresholds) {
  try {
    pairwise_preference(0.1, PreferenceFunction::linear(0.3, 0.1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BadThresholds);
  }
}

TEST(Promethee, IdenticalAlternativesHaveZeroFlows) {
  const double w[] = {0.5, 0.5};
  const auto f = promethee2_flows(matrix({{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}}), w);
  for (double x : f.net) EXPECT_EQ(x, 0.0);
  EXPECT_EQ(promethee2_rank(matrix({{0.3, 0.7}, {0.3, 0.7}, {0.3, 0.7}}), w).order,
            (std::vector<std::string>{"a", "b", "c"}));
}

TEST(Promethee, TwoAlternativesSingleCriterion) {
  const double w[] = {1.0};
  const auto f = promethee2_flows(matrix({{1}, {0}}), w);
  EXPECT_DOUBLE_EQ(f.net[0], 1.0);
  EXPECT_DOUBLE_EQ(f.net[1], -1.0);
}

TEST(Promethee, ThreeOrderedAlternatives) {
  const double w[] = {1.0};
  const auto f = promethee2_flows(matrix({{3}, {2}, {1}}), w);
  EXPECT_EQ(f.net, (std::vector<double>{1, 0, -1}));
}

TEST(Promethee, MatchesDefinitionOracle) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = uniform_int(rng, 2, 6), c = uniform_int(rng, 1, 4);
    const auto m = random_matrix(rng, n, c);
    const auto w = random_simplex(rng, c);
    const auto f = promethee2_flows(m, w);
    for (std::size_t a = 0; a < n; ++a) {
      double plus = 0, minus = 0;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        plus += oracle_pi(m, w, a, b);
        minus += oracle_pi(m, w, b, a);
      }
      EXPECT_NEAR(f.positive[a], plus / double(n - 1), 1e-12);
      EXPECT_NEAR(f.negative[a], minus / double(n - 1), 1e-12);
    }
  }
}

TEST(Sir, IdenticalAlternativesHaveZeroFlows) {
  const double w[] = {1.0};
  const auto f = sir_flows(matrix({{2}, {2}}), w);
  EXPECT_EQ(f.net, (std::vector<double>{0, 0}));
}

TEST(Sir, ThreeOrderedAlternatives) {
  const double w[] = {1.0};
  const auto f = sir_flows(matrix({{3}, {2}, {1}}), w);
  EXPECT_EQ(f.superiority, (std::vector<double>{2, 1, 0}));
  EXPECT_EQ(f.inferiority, (std::vector<double>{0, 1, 2}));
  EXPECT_EQ(f.net, (std::vector<double>{2, 0, -2}));
}

TEST(Outranking, ConservationOnRandomMatrices) {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = uniform_int(rng, 2, 8), c = uniform_int(rng, 1, 5);
    const auto m = random_matrix(rng, n, c);
    const auto w = random_simplex(rng, c);
    const auto f = promethee2_flows(m, w);
    const auto s = sir_flows(m, w);
    EXPECT_NEAR(std::accumulate(f.net.begin(), f.net.end(), 0.0), 0.0, 1e-9);
    for (std::size_t a = 0; a < n; ++a) EXPECT_NEAR(s.net[a], double(n - 1) * f.net[a], 1e-9);
  }
}

TEST(Electre, DominanceOutranks) {
  const double w[] = {0.5, 0.5};
  const auto r = electre1_relation(matrix({{0.9, 0.5}, {0.4, 0.5}}), w, 0.99, 0.0);
  EXPECT_DOUBLE_EQ(r.concordance[0][1], 1.0);
  EXPECT_DOUBLE_EQ(r.discordance[0][1], 0.0);
  EXPECT_TRUE(r.outranks[0][1]);
}

TEST(Electre, IdenticalAlternativesOutrankEachOther) {
  const double w[] = {0.5, 0.5};
  const auto m = matrix({{0.3, 0.3}, {0.3, 0.3}});
  const auto r = electre1_relation(m, w, 0.5, 0.5);
  EXPECT_TRUE(r.outranks[0][1]);
  EXPECT_TRUE(r.outranks[1][0]);
  const auto ranked = electre1_rank(m, w, 0.5, 0.5);
  EXPECT_EQ(ranked.scores.at("a"), 0.0);
  EXPECT_EQ(ranked.scores.at("b"), 0.0);
}

TEST(Electre, WorkedThresholdExample) {
  const double w[] = {0.6, 0.4};
  const auto m = matrix({{1, 0}, {0, 1}});
  const auto r = electre1_relation(m, w, 0.5, 1.0);
  EXPECT_DOUBLE_EQ(r.concordance[0][1], 0.6);
  EXPECT_DOUBLE_EQ(r.discordance[0][1], 1.0);
  EXPECT_TRUE(r.outranks[0][1]);
  EXPECT_DOUBLE_EQ(r.concordance[1][0], 0.4);
  EXPECT_FALSE(r.outranks[1][0]);
  EXPECT_EQ(electre1_rank(m, w, 0.5, 1.0).order, (std::vector<std::string>{"a", "b"}));
}
