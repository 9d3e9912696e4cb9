#include "gmcdm/rough.hpp"

#include <algorithm>
#include <map>

#include "gmcdm/error.hpp"

namespace gmcdm {

namespace {

using ObjectSet = std::vector<bool>;

std::set<std::string> to_ids(const SortingTable& table, const ObjectSet& s) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i]) out.insert(table.objects[i]);
  }
  return out;
}

bool in_union(const SortingTable& table, std::size_t x, UnionKind kind, int t) {
  return kind == UnionKind::AtLeast ? table.classes[x] >= t : table.classes[x] <= t;
}

// Lower approximation membership per object for one class union.
ObjectSet lower_set(const SortingTable& table, UnionKind kind, int t) {
  const std::size_t n = table.objects.size();
  ObjectSet lower(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    bool inside = true;
    for (std::size_t y = 0; y < n && inside; ++y) {
      // Cl>=: D+(x) must stay inside; Cl<=: D-(x) must stay inside.
      const bool inCone = kind == UnionKind::AtLeast ? table.weakly_dominates(y, x) : table.weakly_dominates(x, y);
      if (inCone && !in_union(table, y, kind, t)) inside = false;
    }
    lower[x] = inside;
  }
  return lower;
}

ObjectSet upper_set(const SortingTable& table, UnionKind kind, int t) {
  const std::size_t n = table.objects.size();
  ObjectSet upper(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      const bool inCone = kind == UnionKind::AtLeast ? table.weakly_dominates(x, y) : table.weakly_dominates(y, x);
      if (inCone && in_union(table, y, kind, t)) {
        upper[x] = true;
        break;
      }
    }
  }
  return upper;
}

struct Target {
  UnionKind kind;
  int classIndex;
};

std::vector<Target> targets(const SortingTable& table) {
  std::vector<Target> out;
  for (int t = 2; t <= table.classCount; ++t) out.push_back({UnionKind::AtLeast, t});
  for (int t = 1; t < table.classCount; ++t) out.push_back({UnionKind::AtMost, t});
  return out;
}

}  // namespace

SortingTable SortingTable::from_problem(const GroupProblem& problem) {
  if (!problem.sorting) throw Error(ErrorCode::MissingSortingTable, "problem has no sorting table");
  const SortingData& data = *problem.sorting;
  SortingTable table;
  table.objects = data.objects;
  table.criteria = problem.criteria;
  int maxClass = 0;
  for (const auto& obj : data.objects) {
    auto cls = data.classes.find(obj);
    auto row = data.values.find(obj);
    if (cls == data.classes.end() || cls->second < 1) {
      throw Error(ErrorCode::ParseError, "sorting object " + obj + " lacks a valid class");
    }
    if (row == data.values.end()) throw Error(ErrorCode::ParseError, "sorting object " + obj + " lacks values");
    std::vector<double> values;
    for (const auto& c : problem.criteria) {
      auto v = row->second.find(c.id);
      if (v == row->second.end()) {
        throw Error(ErrorCode::ParseError, "sorting object " + obj + " lacks criterion " + c.id);
      }
      values.push_back(v->second);
    }
    table.values.push_back(std::move(values));
    table.classes.push_back(cls->second);
    maxClass = std::max(maxClass, cls->second);
  }
  if (maxClass < 2) throw Error(ErrorCode::ParseError, "sorting table needs at least two classes");
  table.classCount = maxClass;
  return table;
}

std::size_t SortingTable::index_of(const std::string& object) const {
  auto it = std::find(objects.begin(), objects.end(), object);
  if (it == objects.end()) throw Error(ErrorCode::UnknownObject, object);
  return static_cast<std::size_t>(it - objects.begin());
}

bool SortingTable::weakly_dominates(std::size_t y, std::size_t x) const {
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    const bool ok = criteria[c].direction == Direction::Benefit ? values[y][c] >= values[x][c]
                                                                : values[y][c] <= values[x][c];
    if (!ok) return false;
  }
  return true;
}

DominanceCones dominance_cones(const SortingTable& table, const std::string& object) {
  const std::size_t x = table.index_of(object);
  DominanceCones cones;
  for (std::size_t y = 0; y < table.objects.size(); ++y) {
    if (table.weakly_dominates(y, x)) cones.dominating.insert(table.objects[y]);
    if (table.weakly_dominates(x, y)) cones.dominated.insert(table.objects[y]);
  }
  return cones;
}

std::vector<Approximation> union_approximations(const SortingTable& table) {
  std::vector<Approximation> out;
  for (const auto& target : targets(table)) {
    const ObjectSet lower = lower_set(table, target.kind, target.classIndex);
    const ObjectSet upper = upper_set(table, target.kind, target.classIndex);
    ObjectSet boundary(lower.size(), false);
    for (std::size_t i = 0; i < lower.size(); ++i) boundary[i] = upper[i] && !lower[i];
    out.push_back({target.kind, target.classIndex, to_ids(table, lower), to_ids(table, upper),
                   to_ids(table, boundary)});
  }
  return out;
}

double quality_gamma(const SortingTable& table) {
  if (table.objects.empty()) return 1.0;
  std::set<std::string> boundary;
  for (const auto& approx : union_approximations(table)) {
    boundary.insert(approx.boundary.begin(), approx.boundary.end());
  }
  return static_cast<double>(table.objects.size() - boundary.size()) /
         static_cast<double>(table.objects.size());
}

bool DecisionRule::matches(std::span<const double> values) const {
  return std::all_of(conditions.begin(), conditions.end(),
                     [&](const Condition& c) { return c.holds(values[c.criterion]); });
}

namespace {

class RuleSearch {
 public:
  RuleSearch(const SortingTable& table, Target target)
      : table_(table), target_(target), lower_(lower_set(table, target.kind, target.classIndex)) {
    for (std::size_t c = 0; c < table.criteria.size(); ++c) {
      std::vector<double> vals;
      for (const auto& row : table.values) vals.push_back(row[c]);
      std::sort(vals.begin(), vals.end());
      vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
      thresholds_.push_back(std::move(vals));
    }
  }

  std::vector<DecisionRule> run(std::size_t maxConditions) {
    std::vector<DecisionRule> kept;
    if (std::none_of(lower_.begin(), lower_.end(), [](bool b) { return b; })) return kept;
    const std::size_t m = table_.criteria.size();
    for (std::size_t size = 1; size <= std::min(maxConditions, m); ++size) {
      std::vector<std::size_t> subset(size);
      for (std::size_t i = 0; i < size; ++i) subset[i] = i;
      do {
        std::vector<std::size_t> pick(size, 0);
        do {
          Key key;
          for (std::size_t i = 0; i < size; ++i) key.push_back({subset[i], pick[i]});
          if (certain(key) && minimal(key)) kept.push_back(to_rule(key));
        } while (next_pick(subset, pick));
      } while (next_subset(subset, m));
    }
    return kept;
  }

 private:
  // (criterion, index into that criterion's sorted thresholds)
  using Key = std::vector<std::pair<std::size_t, std::size_t>>;

  bool at_least(std::size_t criterion) const {
    const bool benefit = table_.criteria[criterion].direction == Direction::Benefit;
    return (target_.kind == UnionKind::AtLeast) == benefit;
  }

  Condition condition(const std::pair<std::size_t, std::size_t>& k) const {
    return {k.first, at_least(k.first), thresholds_[k.first][k.second]};
  }

  // Matches at least one object and only lower-approximation objects.
  bool certain(const Key& key) const {
    bool any = false;
    for (std::size_t x = 0; x < table_.objects.size(); ++x) {
      bool match = true;
      for (const auto& k : key) match = match && condition(k).holds(table_.values[x][k.first]);
      if (!match) continue;
      if (!lower_[x]) return false;
      any = true;
    }
    return any;
  }

  // Certainty is monotone under specialization, so a rule is minimal iff no
  // single-step relaxation stays certain.
  bool minimal(const Key& key) const {
    for (std::size_t i = 0; i < key.size(); ++i) {
      const auto [crit, idx] = key[i];
      if (at_least(crit) ? idx > 0 : idx + 1 < thresholds_[crit].size()) {
        Key relaxed = key;
        relaxed[i].second = at_least(crit) ? idx - 1 : idx + 1;
        if (certain(relaxed)) return false;
      }
      if (key.size() > 1) {
        Key dropped = key;
        dropped.erase(dropped.begin() + static_cast<std::ptrdiff_t>(i));
        if (certain(dropped)) return false;
      }
    }
    return true;
  }

  DecisionRule to_rule(const Key& key) const {
    DecisionRule rule;
    rule.kind = target_.kind;
    rule.classIndex = target_.classIndex;
    for (const auto& k : key) rule.conditions.push_back(condition(k));
    for (std::size_t x = 0; x < table_.objects.size(); ++x) {
      if (rule.matches(table_.values[x])) rule.support.push_back(table_.objects[x]);
    }
    return rule;
  }

  bool next_pick(const std::vector<std::size_t>& subset, std::vector<std::size_t>& pick) const {
    for (std::size_t i = pick.size(); i-- > 0;) {
      if (++pick[i] < thresholds_[subset[i]].size()) return true;
      pick[i] = 0;
    }
    return false;
  }

  static bool next_subset(std::vector<std::size_t>& subset, std::size_t m) {
    const std::size_t k = subset.size();
    for (std::size_t i = k; i-- > 0;) {
      if (subset[i] < m - k + i) {
        ++subset[i];
        for (std::size_t j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
        return true;
      }
    }
    return false;
  }

  const SortingTable& table_;
  Target target_;
  ObjectSet lower_;
  std::vector<std::vector<double>> thresholds_;
};

}  // namespace

std::vector<DecisionRule> induce_rules(const SortingTable& table, std::size_t maxConditions) {
  if (maxConditions < 1) throw Error(ErrorCode::OutOfRange, "maxConditions must be at least 1");
  std::vector<DecisionRule> rules;
  for (const auto& target : targets(table)) {
    auto found = RuleSearch(table, target).run(maxConditions);
    rules.insert(rules.end(), std::make_move_iterator(found.begin()), std::make_move_iterator(found.end()));
  }
  return rules;
}

ClassInterval classify_with_rules(std::span<const DecisionRule> rules, std::span<const double> values,
                                  int classCount) {
  ClassInterval out{1, classCount};
  for (const auto& rule : rules) {
    if (!rule.matches(values)) continue;
    if (rule.kind == UnionKind::AtLeast) out.lo = std::max(out.lo, rule.classIndex);
    else out.hi = std::min(out.hi, rule.classIndex);
  }
  return out;
}

RankResult drsa_rank(const GroupProblem& problem, const DecisionMatrix& matrix, std::size_t maxConditions) {
  const SortingTable table = SortingTable::from_problem(problem);
  const auto rules = induce_rules(table, maxConditions);
  const NumericMatrix values = crisp_values(problem, matrix);
  std::vector<double> score;
  nlohmann::json intervals = nlohmann::json::object();
  for (std::size_t a = 0; a < values.rows(); ++a) {
    const ClassInterval iv = classify_with_rules(rules, values.values[a], table.classCount);
    score.push_back(0.5 * (iv.lo + iv.hi));
    intervals[values.alternatives[a]] = {iv.lo, iv.hi};
  }
  nlohmann::json diag = {{"classIntervals", std::move(intervals)},
                         {"quality", quality_gamma(table)},
                         {"ruleCount", rules.size()},
                         {"classCount", table.classCount}};
  return make_rank_result("drsa", values.alternatives, score, std::move(diag));
}

}  // namespace gmcdm
