#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <nlohmann/json.hpp>

#include "gmcdm/pipeline.hpp"
#include "gmcdm/store.hpp"

namespace gmcdm {

enum class SessionPhase { Collecting, Complete, Evaluated };

std::string_view to_string(SessionPhase p);

struct ServiceResponse {
  int status = 200;
  nlohmann::json body;
};

/// 32 hex characters from the system random device.
std::string random_token();

/// Transport-independent session API. Each method maps one HTTP endpoint;
/// status codes follow 200/201 success, 400 invalid input, 404 unknown id,
/// 409 wrong phase. Mutations of one session are serialized; distinct
/// sessions proceed concurrently.
class SessionService {
 public:
  using IdGenerator = std::function<std::string()>;

  explicit SessionService(KnowledgeStore& store, PipelineOptions options = {}, IdGenerator ids = random_token);

  ServiceResponse create_session(const nlohmann::json& body);
  ServiceResponse get_session(const std::string& id) const;
  ServiceResponse put_judgment(const std::string& id, const std::string& maker, const nlohmann::json& body);
  ServiceResponse run(const std::string& id);
  ServiceResponse result(const std::string& id) const;
  ServiceResponse consensus(const std::string& id) const;
  ServiceResponse whatif(const std::string& id, const nlohmann::json& body) const;
  ServiceResponse similar_schemes(const std::string& sessionId, std::size_t k) const;

 private:
  struct Session {
    mutable std::mutex mutex;
    std::string id;
    GroupProblem problem;
    SessionPhase phase = SessionPhase::Collecting;
    std::optional<nlohmann::json> report;
    std::string method;
    std::size_t runs = 0;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  static SessionPhase phase_of(const GroupProblem& problem);
  static nlohmann::json snapshot(const Session& s);

  KnowledgeStore& store_;
  PipelineOptions options_;
  IdGenerator ids_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace gmcdm
