#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "gmcdm/model.hpp"
#include "gmcdm/uncertainty.hpp"

namespace gmcdm {

// Knowledge lifecycle of a stored scheme.
enum class SchemeStatus { Acquired, Represented, Selected, Generated, Assimilated, Emitted };

std::string_view to_string(SchemeStatus s);
std::optional<SchemeStatus> scheme_status_from_string(std::string_view s);

/// acquired -> represented -> {selected | generated} -> assimilated -> emitted.
bool is_allowed_transition(SchemeStatus from, SchemeStatus to);

struct SchemeDescriptor {
  std::size_t alternativeCount = 0;
  std::size_t criterionCount = 0;
  std::size_t makerCount = 0;
  UncertaintyClass uncertainty = UncertaintyClass::Certain;

  static SchemeDescriptor of(const GroupProblem& problem, UncertaintyClass uncertainty);
  /// ln(1+count) for the three counts followed by the class one-hot.
  std::array<double, 8> features() const;
};

/// Cosine similarity of the two feature vectors.
double descriptor_similarity(const SchemeDescriptor& a, const SchemeDescriptor& b);

struct SchemeRecord {
  std::string id;
  std::string sessionId;
  SchemeDescriptor descriptor;
  std::string method;
  std::vector<std::string> resultOrder;
  SchemeStatus status = SchemeStatus::Acquired;
  std::string createdAt;
  std::uint64_t version = 1;
};

nlohmann::json to_json(const SchemeRecord& record);
SchemeRecord scheme_from_json(const nlohmann::json& j);

struct SessionRecord {
  std::string id;
  nlohmann::json problem;
  nlohmann::json report;
  std::vector<std::string> schemeRefs;

  nlohmann::json to_json() const;
  static SessionRecord from_json(const nlohmann::json& j);
};

struct ScoredScheme {
  SchemeRecord record;
  double similarity = 0.0;
};

std::string utc_now();

/// File-backed knowledge warehouse and scheme base. Layout under the root:
/// `journal.ndjson`, one {op, id, version, timestamp, payload} object per
/// line, and `sessions/<id>.json`, one immutable document per session.
/// Writers are serialized; readers share a lock and never see a partial
/// record (a torn trailing journal line is ignored on replay).
class KnowledgeStore {
 public:
  using Clock = std::function<std::string()>;

  explicit KnowledgeStore(std::filesystem::path root, Clock clock = utc_now);

  const std::filesystem::path& root() const { return root_; }

  std::string persist_session(const SessionRecord& session);
  SessionRecord load_session(const std::string& id) const;
  /// Exact bytes of the stored session document.
  std::string load_session_text(const std::string& id) const;
  bool has_session(const std::string& id) const;
  std::vector<std::string> session_ids() const;  // insertion order

  /// Stores a new scheme at version 1 with status acquired.
  SchemeRecord add_scheme(SchemeRecord scheme);
  /// Appends a new version with the next status; throws IllegalTransition.
  SchemeRecord transition_status(const std::string& id, SchemeStatus next);
  std::optional<SchemeRecord> scheme(const std::string& id) const;
  std::vector<SchemeRecord> scheme_history(const std::string& id) const;
  std::vector<SchemeRecord> schemes() const;  // latest versions, creation order

  /// Top-k emitted schemes by descriptor cosine similarity, newest first on ties.
  std::vector<ScoredScheme> retrieve_similar_schemes(const SchemeDescriptor& descriptor, std::size_t k) const;

 private:
  void replay();
  void append(const std::string& op, const std::string& id, std::uint64_t version, const nlohmann::json& payload);
  std::filesystem::path session_path(const std::string& id) const;

  std::filesystem::path root_;
  Clock clock_;
  mutable std::shared_mutex mutex_;
  std::vector<std::string> sessionOrder_;
  std::map<std::string, std::vector<SchemeRecord>> schemeVersions_;
  std::vector<std::string> schemeOrder_;
};

}  // namespace gmcdm
