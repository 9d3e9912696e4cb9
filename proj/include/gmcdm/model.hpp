#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace gmcdm {

inline constexpr double kWeightSumTolerance = 1e-6;
inline constexpr double kClosureTolerance = 1e-9;

enum class Direction { Benefit, Cost };

std::string_view to_string(Direction d);

struct Alternative {
  std::string id;
  std::string name;
};

struct Criterion {
  std::string id;
  std::string name;
  Direction direction = Direction::Benefit;
};

struct DecisionMaker {
  std::string id;
  double weight = 0.0;
};

/// Intuitionistic fuzzy value: membership `mu`, non-membership `nu`.
struct Ifv {
  double mu = 0.0;
  double nu = 1.0;

  double hesitation() const { return 1.0 - mu - nu; }
  bool valid() const;

  friend bool operator==(const Ifv&, const Ifv&) = default;
};

struct Outcome {
  double value = 0.0;
  double probability = 0.0;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

/// Finite distribution over real outcomes. `canonical()` sorts outcomes,
/// merges duplicate values and drops zero-probability entries.
struct DiscreteDistribution {
  std::vector<Outcome> outcomes;

  static DiscreteDistribution degenerate(double value) { return {{{value, 1.0}}}; }

  DiscreteDistribution canonical() const;
  bool valid() const;
  double min_value() const;
  double max_value() const;

  friend bool operator==(const DiscreteDistribution&, const DiscreteDistribution&) = default;
};

enum class CellKind { Crisp, Dist, Ifs };

std::string_view to_string(CellKind k);

/// One judgment d_ij for one maker: a crisp real, a distribution, or an IFV.
class CellValue {
 public:
  CellValue() : value_(0.0) {}
  CellValue(double crisp) : value_(crisp) {}  // NOLINT(google-explicit-constructor)
  CellValue(DiscreteDistribution dist) : value_(std::move(dist)) {}  // NOLINT
  CellValue(Ifv ifv) : value_(ifv) {}  // NOLINT

  CellKind kind() const { return static_cast<CellKind>(value_.index()); }

  double crisp() const { return std::get<double>(value_); }
  const DiscreteDistribution& dist() const { return std::get<DiscreteDistribution>(value_); }
  const Ifv& ifs() const { return std::get<Ifv>(value_); }

  friend bool operator==(const CellValue&, const CellValue&) = default;

 private:
  std::variant<double, DiscreteDistribution, Ifv> value_;
};

/// One maker's decision plane: cells keyed alternative -> criterion, plus the
/// maker's own criterion weights.
struct DecisionMatrix {
  std::string maker;
  std::map<std::string, std::map<std::string, CellValue>> cells;
  std::map<std::string, double> criterionWeights;

  const CellValue* find(const std::string& alternative, const std::string& criterion) const;
  void set(const std::string& alternative, const std::string& criterion, CellValue value) {
    cells[alternative][criterion] = std::move(value);
  }

  friend bool operator==(const DecisionMatrix&, const DecisionMatrix&) = default;
};

/// Example-based ordinal classification data attached to a problem. Criteria
/// are the problem's criteria; classes are 1..m, higher is better.
struct SortingData {
  std::vector<std::string> objects;
  std::map<std::string, int> classes;
  std::map<std::string, std::map<std::string, double>> values;

  friend bool operator==(const SortingData&, const SortingData&) = default;
};

struct GroupProblem {
  std::string id;
  std::vector<Alternative> alternatives;
  std::vector<Criterion> criteria;
  std::vector<DecisionMaker> makers;
  std::vector<DecisionMatrix> matrices;
  std::optional<SortingData> sorting;
  // Environment annotations the engine cannot detect from a snapshot.
  std::vector<std::string> flags;

  const DecisionMatrix* matrix_for(const std::string& maker) const;
  std::vector<std::string> alternative_ids() const;
  std::vector<std::string> criterion_ids() const;
  std::vector<Direction> directions() const;
  std::vector<double> maker_weights() const;
};

enum class Severity { Error, Warning };

struct Violation {
  std::string code;
  std::string location;
  Severity severity = Severity::Error;

  friend bool operator==(const Violation&, const Violation&) = default;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool empty() const { return violations.empty(); }
  bool has_errors() const;
};

/// Reports every invariant violation instead of throwing. In non-strict mode
/// missing grid cells are warnings; everything else is an error either way.
ValidationReport validate_problem(const GroupProblem& problem, bool strict);

/// Dense alternatives x criteria table of reals (row per alternative).
struct NumericMatrix {
  std::vector<std::string> alternatives;
  std::vector<std::string> criteria;
  std::vector<std::vector<double>> values;

  std::size_t rows() const { return alternatives.size(); }
  std::size_t cols() const { return criteria.size(); }
  double at(std::size_t a, std::size_t c) const { return values[a][c]; }
};

/// Extracts the crisp grid of `matrix` in problem order. Throws NonCrispCell
/// or MissingCell.
NumericMatrix crisp_values(const GroupProblem& problem, const DecisionMatrix& matrix);

/// Min-max normalization per column, reversed for cost criteria; a constant
/// column maps to 0.5.
NumericMatrix normalize_crisp_matrix(const NumericMatrix& raw, std::span<const Direction> directions);
NumericMatrix normalize_crisp_matrix(const GroupProblem& problem, const DecisionMatrix& matrix);

/// Scale used by the ranking methods: a column whose values already lie in
/// [0,1] is taken as a score on the unit scale (cost columns reflected as
/// 1 - v); any other column is min-max normalized.
NumericMatrix unit_scale_matrix(const NumericMatrix& raw, std::span<const Direction> directions);

std::vector<double> normalize_weights(std::span<const double> raw);

/// The matrix's criterion weights in problem criterion order (absent -> 0).
std::vector<double> criterion_weight_vector(const GroupProblem& problem, const DecisionMatrix& matrix);

}  // namespace gmcdm
