#include "gmcdm/session_service.hpp"

#include <algorithm>
#include <array>
#include <random>

#include "gmcdm/error.hpp"
#include "gmcdm/json_io.hpp"

namespace gmcdm {

std::string_view to_string(SessionPhase p) {
  switch (p) {
    case SessionPhase::Collecting: return "collecting";
    case SessionPhase::Complete: return "complete";
    case SessionPhase::Evaluated: return "evaluated";
  }
  return "unknown";
}

std::string random_token() {
  std::random_device rd;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (int i = 0; i < 8; ++i) {
    const auto word = rd();
    for (int nibble = 0; nibble < 4; ++nibble) out.push_back(kHex[(word >> (4 * nibble)) & 0xF]);
  }
  return out;
}

namespace {

ServiceResponse error_response(int status, std::string_view code, const std::string& message) {
  return {status, {{"error", code}, {"message", message}}};
}

ServiceResponse from_error(const Error& e) {
  switch (e.code()) {
    case ErrorCode::UnknownRecord:
    case ErrorCode::UnknownObject: return error_response(404, to_string(e.code()), e.what());
    default: return error_response(400, to_string(e.code()), e.what());
  }
}

ServiceResponse not_found(const std::string& what) { return error_response(404, "NOT_FOUND", what); }

ServiceResponse phase_conflict(std::string_view needed, SessionPhase actual) {
  return error_response(409, "PHASE_CONFLICT",
                        "requires phase " + std::string(needed) + ", session is " + std::string(to_string(actual)));
}

// Violations that belong to a session skeleton (judgments may still be absent).
ValidationReport skeleton_errors(const GroupProblem& problem) {
  ValidationReport all = validate_problem(problem, false);
  ValidationReport out;
  for (auto& v : all.violations) {
    if (v.severity == Severity::Error && v.code != "MISSING_MATRIX") out.violations.push_back(std::move(v));
  }
  return out;
}

}  // namespace

SessionService::SessionService(KnowledgeStore& store, PipelineOptions options, IdGenerator ids)
    : store_(store), options_(std::move(options)), ids_(std::move(ids)) {}

namespace {

bool has_full_plane(const GroupProblem& problem, const std::string& maker) {
  const DecisionMatrix* plane = problem.matrix_for(maker);
  if (plane == nullptr) return false;
  for (const auto& a : problem.alternatives) {
    for (const auto& c : problem.criteria) {
      if (plane->find(a.id, c.id) == nullptr) return false;
    }
  }
  return true;
}

}  // namespace

SessionPhase SessionService::phase_of(const GroupProblem& problem) {
  for (const auto& m : problem.makers) {
    if (!has_full_plane(problem, m.id)) return SessionPhase::Collecting;
  }
  return SessionPhase::Complete;
}

nlohmann::json SessionService::snapshot(const Session& s) {
  nlohmann::json missing = nlohmann::json::array();
  for (const auto& m : s.problem.makers) {
    if (!has_full_plane(s.problem, m.id)) missing.push_back(m.id);
  }
  return {{"id", s.id},
          {"phase", to_string(s.phase)},
          {"problem", problem_to_json(s.problem)["problem"]},
          {"awaitingMakers", std::move(missing)}};
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse SessionService::create_session(const nlohmann::json& body) {
  auto session = std::make_shared<Session>();
  try {
    session->problem = problem_from_json(body);
  } catch (const Error& e) {
    return from_error(e);
  }
  const ValidationReport errors = skeleton_errors(session->problem);
  if (!errors.empty()) {
    ServiceResponse r = error_response(400, "VALIDATION_FAILED", "problem skeleton is invalid");
    r.body["validation"] = to_json(errors);
    return r;
  }
  // Judgments follow maker order so exported problems are canonical.
  std::vector<DecisionMatrix> ordered;
  for (const auto& m : session->problem.makers) {
    if (const auto* plane = session->problem.matrix_for(m.id)) ordered.push_back(*plane);
  }
  session->problem.matrices = std::move(ordered);
  session->phase = phase_of(session->problem);

  std::unique_lock lock(mutex_);
  do {
    session->id = ids_();
  } while (sessions_.contains(session->id));
  sessions_[session->id] = session;
  return {201, {{"id", session->id}, {"phase", to_string(session->phase)}}};
}

ServiceResponse SessionService::get_session(const std::string& id) const {
  auto s = find(id);
  if (!s) return not_found("session " + id);
  std::lock_guard lock(s->mutex);
  return {200, snapshot(*s)};
}

ServiceResponse SessionService::put_judgment(const std::string& id, const std::string& maker,
                                             const nlohmann::json& body) {
  auto s = find(id);
  if (!s) return not_found("session " + id);
  std::lock_guard lock(s->mutex);
  const auto& makers = s->problem.makers;
  if (std::none_of(makers.begin(), makers.end(), [&](const DecisionMaker& m) { return m.id == maker; })) {
    return not_found("maker " + maker);
  }
  DecisionMatrix matrix;
  try {
    matrix = judgment_from_json(body, maker);
  } catch (const Error& e) {
    return from_error(e);
  }

  GroupProblem updated = s->problem;
  auto it = std::find_if(updated.matrices.begin(), updated.matrices.end(),
                         [&](const DecisionMatrix& m) { return m.maker == maker; });
  if (it != updated.matrices.end() && *it == matrix) return {200, snapshot(*s)};
  if (it != updated.matrices.end()) {
    *it = matrix;
  } else {
    updated.matrices.push_back(matrix);
    std::vector<DecisionMatrix> ordered;
    for (const auto& m : updated.makers) {
      if (const auto* plane = updated.matrix_for(m.id)) ordered.push_back(*plane);
    }
    updated.matrices = std::move(ordered);
  }

  ValidationReport errors;
  const std::string prefix = "judgments[" + maker + "]";
  for (auto& v : validate_problem(updated, false).violations) {
    if (v.severity == Severity::Error && v.location.rfind(prefix, 0) == 0) errors.violations.push_back(std::move(v));
  }
  if (!errors.empty()) {
    ServiceResponse r = error_response(400, "VALIDATION_FAILED", "judgment is invalid");
    r.body["validation"] = to_json(errors);
    return r;
  }
  s->problem = std::move(updated);
  s->phase = phase_of(s->problem);
  s->report.reset();
  s->method.clear();
  return {200, snapshot(*s)};
}

ServiceResponse SessionService::run(const std::string& id) {
  auto s = find(id);
  if (!s) return not_found("session " + id);
  std::lock_guard lock(s->mutex);
  if (s->phase == SessionPhase::Collecting) {
    ServiceResponse r = phase_conflict("complete", s->phase);
    r.body["awaitingMakers"] = snapshot(*s)["awaitingMakers"];
    return r;
  }
  try {
    const PipelineReport report = run_pipeline(s->problem, options_, &store_);
    const nlohmann::json doc = report.to_json();
    if (!report.ok()) return {400, doc};
    const std::string recordId = s->id + "-" + std::to_string(++s->runs);
    archive_run(store_, recordId, s->problem, problem_to_json(s->problem), report);
    s->report = doc;
    s->method = report.result->method;
    s->phase = SessionPhase::Evaluated;
    return {200, doc};
  } catch (const Error& e) {
    return from_error(e);
  }
}

ServiceResponse SessionService::result(const std::string& id) const {
  auto s = find(id);
  if (!s) return not_found("session " + id);
  std::lock_guard lock(s->mutex);
  if (s->phase != SessionPhase::Evaluated) return phase_conflict("evaluated", s->phase);
  return {200, (*s->report)["result"]};
}

ServiceResponse SessionService::consensus(const std::string& id) const {
  auto s = find(id);
  if (!s) return not_found("session " + id);
  std::lock_guard lock(s->mutex);
  if (s->phase != SessionPhase::Evaluated) return phase_conflict("evaluated", s->phase);
  for (const auto& stage : (*s->report)["stages"]) {
    if (stage["stage"] == "conflict") return {200, stage["payload"]};
  }
  return error_response(500, "INTERNAL", "conflict stage missing");
}

ServiceResponse SessionService::whatif(const std::string& id, const nlohmann::json& body) const {
  auto s = find(id);
  if (!s) return not_found("session " + id);
  std::lock_guard lock(s->mutex);
  if (s->phase != SessionPhase::Evaluated) return phase_conflict("evaluated", s->phase);
  if (!body.is_object() || !body.contains("criterion") || !body["criterion"].is_string() ||
      !body.contains("delta") || !body["delta"].is_number()) {
    return error_response(400, "PARSE_ERROR", "body needs criterion (string) and delta (number)");
  }
  for (const auto& [key, value] : body.items()) {
    if (key != "criterion" && key != "delta" && key != "method") {
      return error_response(400, "PARSE_ERROR", "unknown field '" + key + "'");
    }
  }
  std::string method = s->method;
  if (body.contains("method")) {
    if (!body["method"].is_string()) return error_response(400, "PARSE_ERROR", "method must be a string");
    method = body["method"].get<std::string>();
  }
  try {
    return {200, to_json(whatif_weights(s->problem, method, body["criterion"].get<std::string>(),
                                        body["delta"].get<double>(), options_.method))};
  } catch (const Error& e) {
    return from_error(e);
  }
}

ServiceResponse SessionService::similar_schemes(const std::string& sessionId, std::size_t k) const {
  auto s = find(sessionId);
  if (!s) return not_found("session " + sessionId);
  if (k < 1) return error_response(400, "PARSE_ERROR", "k must be at least 1");
  SchemeDescriptor descriptor;
  {
    std::lock_guard lock(s->mutex);
    descriptor = SchemeDescriptor::of(s->problem, classify_problem(s->problem).uncertaintyClass);
  }
  nlohmann::json list = nlohmann::json::array();
  for (const auto& scored : store_.retrieve_similar_schemes(descriptor, k)) {
    nlohmann::json entry = to_json(scored.record);
    entry["similarity"] = scored.similarity;
    list.push_back(std::move(entry));
  }
  return {200, {{"schemes", std::move(list)}}};
}

}  // namespace gmcdm
