#pragma once

#include <set>
#include <span>
#include <string>
#include <vector>

#include "gmcdm/classic.hpp"
#include "gmcdm/model.hpp"

namespace gmcdm {

/// Dense view of example-based sorting data: values[object][criterion],
/// classes in 1..classCount (higher is better).
struct SortingTable {
  std::vector<std::string> objects;
  std::vector<Criterion> criteria;
  std::vector<std::vector<double>> values;
  std::vector<int> classes;
  int classCount = 2;

  /// Builds from the problem's sorting block; classCount is the highest class
  /// observed. Throws MissingSortingTable / ParseError on incomplete data.
  static SortingTable from_problem(const GroupProblem& problem);

  std::size_t index_of(const std::string& object) const;  // throws UnknownObject
  /// y is at least as good as x on every criterion (cost criteria reversed).
  bool weakly_dominates(std::size_t y, std::size_t x) const;
};

struct DominanceCones {
  std::set<std::string> dominating;  // D+(x)
  std::set<std::string> dominated;   // D-(x)
};

DominanceCones dominance_cones(const SortingTable& table, const std::string& object);

enum class UnionKind { AtLeast, AtMost };

struct Approximation {
  UnionKind kind = UnionKind::AtLeast;
  int classIndex = 1;
  std::set<std::string> lower;
  std::set<std::string> upper;
  std::set<std::string> boundary;
};

/// Upward unions for t = 2..m, then downward unions for t = 1..m-1.
std::vector<Approximation> union_approximations(const SortingTable& table);

/// Share of objects outside every boundary region.
double quality_gamma(const SortingTable& table);

struct Condition {
  std::size_t criterion = 0;
  bool atLeast = true;  // value >= threshold, otherwise value <= threshold
  double threshold = 0.0;

  bool holds(double value) const { return atLeast ? value >= threshold : value <= threshold; }
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct DecisionRule {
  UnionKind kind = UnionKind::AtLeast;
  std::vector<Condition> conditions;
  int classIndex = 1;
  bool certain = true;
  std::vector<std::string> support;  // training objects matched

  bool matches(std::span<const double> values) const;
};

/// Minimal certain rules per lower approximation: every conjunction of up to
/// `maxConditions` single-criterion conditions with observed thresholds that
/// matches only lower-approximation objects and cannot be relaxed (weaker
/// threshold or dropped condition) without losing that property.
std::vector<DecisionRule> induce_rules(const SortingTable& table, std::size_t maxConditions = 3);

struct ClassInterval {
  int lo = 1;
  int hi = 1;
  friend bool operator==(const ClassInterval&, const ClassInterval&) = default;
};

ClassInterval classify_with_rules(std::span<const DecisionRule> rules, std::span<const double> values,
                                  int classCount);

/// Classifies each alternative's crisp cells with rules induced from the
/// problem's sorting table; scores by interval midpoint.
RankResult drsa_rank(const GroupProblem& problem, const DecisionMatrix& matrix,
                     std::size_t maxConditions = 3);

}  // namespace gmcdm
