#include "gmcdm/pipeline.hpp"

#include <algorithm>

#include "gmcdm/error.hpp"
#include "gmcdm/json_io.hpp"
#include "gmcdm/uncertainty.hpp"

namespace gmcdm {

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::Environment: return "environment";
    case Stage::Problem: return "problem";
    case Stage::Group: return "group";
    case Stage::Scheme: return "scheme";
    case Stage::Conflict: return "conflict";
    case Stage::Coordination: return "coordination";
  }
  return "unknown";
}

std::string_view to_string(StageStatus s) {
  switch (s) {
    case StageStatus::Ok: return "ok";
    case StageStatus::Warning: return "warning";
    case StageStatus::Error: return "error";
  }
  return "unknown";
}

nlohmann::json PipelineReport::to_json() const {
  nlohmann::json stageList = nlohmann::json::array();
  for (const auto& s : stages) {
    stageList.push_back({{"stage", to_string(s.stage)}, {"status", to_string(s.status)}, {"payload", s.payload}});
  }
  nlohmann::json out = {{"stages", std::move(stageList)}, {"result", nullptr}};
  if (result) out["result"] = rank_summary(*result);
  if (error) out["error"] = to_string(*error);
  return out;
}

namespace {

nlohmann::json error_payload(const Error& e) {
  return {{"error", to_string(e.code())}, {"message", e.what()}};
}

// Marks every stage from `from` on as failed with the given error.
void fail_from(PipelineReport& report, Stage from, const Error& e) {
  report.error = e.code();
  for (int s = static_cast<int>(from); s <= static_cast<int>(Stage::Coordination); ++s) {
    const auto stage = static_cast<Stage>(s);
    report.stages.push_back({stage, StageStatus::Error,
                             stage == from ? error_payload(e) : nlohmann::json{{"skipped", true}}});
  }
}

}  // namespace

PipelineReport run_pipeline(const GroupProblem& problem, const PipelineOptions& options,
                            const KnowledgeStore* store) {
  if (options.methodOverride && !is_known_method(*options.methodOverride)) {
    throw Error(ErrorCode::UnknownMethod, *options.methodOverride);
  }
  PipelineReport report;

  // 1. environment
  const EnvironmentReport env = classify_problem(problem);
  const std::vector<std::string> recommended = recommend_methods(env);
  {
    nlohmann::json payload = to_json(env);
    payload["recommendedMethods"] = recommended;
    report.stages.push_back({Stage::Environment, StageStatus::Ok, std::move(payload)});
  }

  // 2. problem
  const ValidationReport validation = validate_problem(problem, true);
  {
    nlohmann::json payload = to_json(validation);
    payload["strict"] = true;
    const StageStatus status = validation.has_errors()  ? StageStatus::Error
                               : validation.empty()     ? StageStatus::Ok
                                                        : StageStatus::Warning;
    report.stages.push_back({Stage::Problem, status, std::move(payload)});
    if (validation.has_errors()) {
      report.error = ErrorCode::ValidationFailed;
      return report;
    }
  }

  Stage current = Stage::Group;
  try {
    // 3. group: organizational analysis is out of scope; weights are audited.
    DecisionMatrix group = aggregate_group_matrix(problem);
    {
      nlohmann::json makerWeights = nlohmann::json::object();
      double makerSum = 0.0;
      for (const auto& m : problem.makers) {
        makerWeights[m.id] = m.weight;
        makerSum += m.weight;
      }
      const auto normalized = normalize_weights(problem.maker_weights());
      nlohmann::json normalizedWeights = nlohmann::json::object();
      for (std::size_t k = 0; k < problem.makers.size(); ++k) normalizedWeights[problem.makers[k].id] = normalized[k];
      nlohmann::json criterionSums = nlohmann::json::object();
      for (const auto& matrix : problem.matrices) {
        double s = 0.0;
        for (const auto& [c, w] : matrix.criterionWeights) s += w;
        criterionSums[matrix.maker] = s;
      }
      nlohmann::json groupWeights = nlohmann::json::object();
      for (const auto& [c, w] : group.criterionWeights) groupWeights[c] = w;
      report.stages.push_back({Stage::Group, StageStatus::Ok,
                               {{"makerWeights", std::move(makerWeights)},
                                {"makerWeightSum", makerSum},
                                {"normalizedMakerWeights", std::move(normalizedWeights)},
                                {"criterionWeightSums", std::move(criterionSums)},
                                {"groupCriterionWeights", std::move(groupWeights)},
                                {"analysis", "weight audit only"}}});
    }

    // 4. scheme: every candidate on the group plane and on each maker's plane.
    current = Stage::Scheme;
    const std::vector<std::string> candidates =
        options.methodOverride ? std::vector<std::string>{*options.methodOverride} : recommended;
    nlohmann::json candidateList = nlohmann::json::array();
    std::optional<std::string> committed;
    std::optional<RankResult> committedResult;
    bool anyFailed = false;
    for (const auto& method : candidates) {
      nlohmann::json entry = {{"method", method}};
      try {
        RankResult groupResult = run_method(method, problem, group, options.method);
        nlohmann::json individual = nlohmann::json::object();
        for (const auto& matrix : problem.matrices) {
          individual[matrix.maker] = run_method(method, problem, matrix, options.method).order;
        }
        entry["status"] = "ok";
        entry["order"] = groupResult.order;
        entry["scores"] = rank_summary(groupResult)["scores"];
        entry["individualOrders"] = std::move(individual);
        if (!committed) {
          committed = method;
          committedResult = std::move(groupResult);
        }
      } catch (const Error& e) {
        anyFailed = true;
        entry["status"] = "error";
        entry["error"] = to_string(e.code());
        entry["message"] = e.what();
      }
      candidateList.push_back(std::move(entry));
    }
    nlohmann::json similar = nlohmann::json::array();
    if (store != nullptr) {
      for (const auto& s : store->retrieve_similar_schemes(SchemeDescriptor::of(problem, env.uncertaintyClass),
                                                           options.similarSchemes)) {
        similar.push_back({{"schemeId", s.record.id},
                           {"sessionId", s.record.sessionId},
                           {"similarity", s.similarity},
                           {"method", s.record.method},
                           {"order", s.record.resultOrder},
                           {"createdAt", s.record.createdAt}});
      }
    }
    report.stages.push_back({Stage::Scheme, anyFailed ? StageStatus::Warning : StageStatus::Ok,
                             {{"candidates", std::move(candidateList)}, {"similarSchemes", std::move(similar)}}});
    if (!committed) {
      throw Error(ErrorCode::MethodInapplicable, "no candidate method applies to this problem");
    }

    // 5. conflict
    current = Stage::Conflict;
    const ConsensusReport cons = consensus(problem, *committed, options.method, options.consensus);
    report.stages.push_back({Stage::Conflict, cons.conflicts.empty() ? StageStatus::Ok : StageStatus::Warning,
                             to_json(cons)});

    // 6. coordination
    current = Stage::Coordination;
    report.stages.push_back({Stage::Coordination, StageStatus::Ok, to_json(*committedResult)});
    report.result = std::move(committedResult);
  } catch (const Error& e) {
    fail_from(report, current, e);
  }
  return report;
}

std::string archive_run(KnowledgeStore& store, const std::string& sessionId, const GroupProblem& problem,
                        const nlohmann::json& problemDoc, const PipelineReport& report) {
  const std::string schemeId = sessionId + "-scheme";
  SessionRecord session{sessionId, problemDoc, report.to_json(), {}};
  if (report.result) session.schemeRefs.push_back(schemeId);
  store.persist_session(session);
  if (!report.result) return {};

  SchemeRecord scheme;
  scheme.id = schemeId;
  scheme.sessionId = sessionId;
  scheme.descriptor = SchemeDescriptor::of(problem, classify_problem(problem).uncertaintyClass);
  scheme.method = report.result->method;
  scheme.resultOrder = report.result->order;
  store.add_scheme(scheme);
  for (auto next : {SchemeStatus::Represented, SchemeStatus::Generated, SchemeStatus::Assimilated,
                    SchemeStatus::Emitted}) {
    store.transition_status(schemeId, next);
  }
  return schemeId;
}

}  // namespace gmcdm
