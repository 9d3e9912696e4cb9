#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmcdm/classic.hpp"
#include "gmcdm/error.hpp"
#include "gmcdm/group.hpp"
#include "gmcdm/methods.hpp"
#include "gmcdm/model.hpp"
#include "gmcdm/store.hpp"

namespace gmcdm {

enum class Stage { Environment, Problem, Group, Scheme, Conflict, Coordination };
enum class StageStatus { Ok, Warning, Error };

std::string_view to_string(Stage s);
std::string_view to_string(StageStatus s);

struct StageReport {
  Stage stage = Stage::Environment;
  StageStatus status = StageStatus::Ok;
  nlohmann::json payload = nlohmann::json::object();
};

struct PipelineOptions {
  std::optional<std::string> methodOverride;
  MethodOptions method;
  ConsensusOptions consensus;
  std::size_t similarSchemes = 3;
};

struct PipelineReport {
  std::vector<StageReport> stages;
  std::optional<RankResult> result;
  std::optional<ErrorCode> error;

  bool ok() const { return result.has_value(); }
  /// {"stages": [{stage, status, payload}...], "result": {method, scores, order} | null}
  /// plus "error" when the run stopped early.
  nlohmann::json to_json() const;
};

/// Runs the six decision stages in order. A strict validation failure stops
/// after stage 2; any later failure marks its stage and the remaining ones as
/// errors. The final ranking uses the override or the first recommended
/// method that applies to the group plane and every individual plane.
/// Throws UnknownMethod for an unknown override.
PipelineReport run_pipeline(const GroupProblem& problem, const PipelineOptions& options,
                            const KnowledgeStore* store = nullptr);

/// Persists a finished run as a session plus one scheme record walked through
/// acquired -> represented -> generated -> assimilated -> emitted, which makes
/// it eligible for retrieval. Returns the scheme id.
std::string archive_run(KnowledgeStore& store, const std::string& sessionId, const GroupProblem& problem,
                        const nlohmann::json& problemDoc, const PipelineReport& report);

}  // namespace gmcdm
