#include "gmcdm/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gmcdm/error.hpp"

namespace gmcdm {

namespace {

Ifv clamp_ifv(double mu, double nu) {
  mu = std::clamp(mu, 0.0, 1.0);
  nu = std::clamp(nu, 0.0, 1.0);
  return {mu, nu};
}

}  // namespace

Ifv ifv_add(const Ifv& a, const Ifv& b) {
  return clamp_ifv(a.mu + b.mu - a.mu * b.mu, a.nu * b.nu);
}

Ifv ifv_scale(double lambda, const Ifv& a) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::BadLambda, "lambda must be positive");
  if (lambda == 1.0) return a;
  return clamp_ifv(1.0 - std::pow(1.0 - a.mu, lambda), std::pow(a.nu, lambda));
}

Ifv ifwa(std::span<const Ifv> values, std::span<const double> weights) {
  if (values.empty() || values.size() != weights.size()) {
    throw Error(ErrorCode::DimensionMismatch, "ifwa needs equal, nonzero lengths");
  }
  // Exact idempotency: identical inputs (among positive weights) pass through.
  const Ifv* first = nullptr;
  bool identical = true;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (weights[k] == 0.0) continue;
    if (first == nullptr) first = &values[k];
    else identical = identical && values[k] == *first;
  }
  if (first != nullptr && identical) return *first;

  double keep = 1.0;  // prod (1 - mu_k)^w_k
  double non = 1.0;   // prod nu_k^w_k
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (weights[k] == 0.0) continue;
    keep *= std::pow(1.0 - values[k].mu, weights[k]);
    non *= std::pow(values[k].nu, weights[k]);
  }
  return clamp_ifv(1.0 - keep, non);
}

std::partial_ordering ifv_compare(const Ifv& a, const Ifv& b) {
  // Compare on a 1e-12 grid so rounding noise (0.4 - 0.1 vs 0.5 - 0.2) does
  // not decide ties; rounding keeps the relation transitive.
  const auto grid = [](double x) { return std::llround(x * 1e12); };
  const auto sa = grid(ifv_score(a));
  const auto sb = grid(ifv_score(b));
  if (sa != sb) return sa <=> sb;
  const auto ha = grid(ifv_accuracy(a));
  const auto hb = grid(ifv_accuracy(b));
  if (ha != hb) return ha <=> hb;
  return std::partial_ordering::equivalent;
}

RankResult ifwa_group_rank(const GroupProblem& problem) {
  const auto makerWeights = problem.maker_weights();
  std::vector<const DecisionMatrix*> planes;
  for (const auto& m : problem.makers) {
    const DecisionMatrix* plane = problem.matrix_for(m.id);
    if (plane == nullptr) throw Error(ErrorCode::MissingCell, "no judgments for maker " + m.id);
    planes.push_back(plane);
  }

  // Group criterion weights: sum_k w_k * omega_j^(k), renormalized.
  std::vector<double> omega(problem.criteria.size(), 0.0);
  for (std::size_t k = 0; k < planes.size(); ++k) {
    const auto w = criterion_weight_vector(problem, *planes[k]);
    for (std::size_t j = 0; j < omega.size(); ++j) omega[j] += makerWeights[k] * w[j];
  }
  omega = normalize_weights(omega);

  const std::size_t n = problem.alternatives.size();
  std::vector<Ifv> overall(n);
  nlohmann::json groupCells = nlohmann::json::object();
  for (std::size_t a = 0; a < n; ++a) {
    const auto& alt = problem.alternatives[a].id;
    std::vector<Ifv> perCriterion;
    for (const auto& crit : problem.criteria) {
      std::vector<Ifv> byMaker;
      for (const auto* plane : planes) {
        const CellValue* cell = plane->find(alt, crit.id);
        const std::string where = plane->maker + ":(" + alt + "," + crit.id + ")";
        if (cell == nullptr) throw Error(ErrorCode::MissingCell, where);
        if (cell->kind() != CellKind::Ifs) throw Error(ErrorCode::NonIfsCell, where);
        Ifv v = cell->ifs();
        // Cost criteria enter with membership and non-membership swapped.
        if (crit.direction == Direction::Cost) std::swap(v.mu, v.nu);
        byMaker.push_back(v);
      }
      perCriterion.push_back(ifwa(byMaker, makerWeights));
    }
    overall[a] = ifwa(perCriterion, omega);
    groupCells[alt] = {{"mu", overall[a].mu}, {"nu", overall[a].nu}};
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    const auto cmp = ifv_compare(overall[x], overall[y]);
    if (cmp != std::partial_ordering::equivalent) return cmp == std::partial_ordering::greater;
    return problem.alternatives[x].id < problem.alternatives[y].id;
  });

  RankResult r;
  r.method = "ifwa_group";
  for (std::size_t a = 0; a < n; ++a) r.scores[problem.alternatives[a].id] = ifv_score(overall[a]);
  for (auto i : idx) r.order.push_back(problem.alternatives[i].id);
  nlohmann::json accuracy = nlohmann::json::object();
  for (std::size_t a = 0; a < n; ++a) accuracy[problem.alternatives[a].id] = ifv_accuracy(overall[a]);
  r.diagnostics = {{"aggregated", std::move(groupCells)}, {"accuracy", std::move(accuracy)}};
  return r;
}

}  // namespace gmcdm
