#include "gmcdm/store.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>
#include <sstream>

#include "gmcdm/error.hpp"

namespace gmcdm {

using nlohmann::json;

std::string_view to_string(SchemeStatus s) {
  switch (s) {
    case SchemeStatus::Acquired: return "acquired";
    case SchemeStatus::Represented: return "represented";
    case SchemeStatus::Selected: return "selected";
    case SchemeStatus::Generated: return "generated";
    case SchemeStatus::Assimilated: return "assimilated";
    case SchemeStatus::Emitted: return "emitted";
  }
  return "unknown";
}

std::optional<SchemeStatus> scheme_status_from_string(std::string_view s) {
  for (auto st : {SchemeStatus::Acquired, SchemeStatus::Represented, SchemeStatus::Selected,
                  SchemeStatus::Generated, SchemeStatus::Assimilated, SchemeStatus::Emitted}) {
    if (to_string(st) == s) return st;
  }
  return std::nullopt;
}

bool is_allowed_transition(SchemeStatus from, SchemeStatus to) {
  using S = SchemeStatus;
  switch (from) {
    case S::Acquired: return to == S::Represented;
    case S::Represented: return to == S::Selected || to == S::Generated;
    case S::Selected:
    case S::Generated: return to == S::Assimilated;
    case S::Assimilated: return to == S::Emitted;
    case S::Emitted: return false;
  }
  return false;
}

SchemeDescriptor SchemeDescriptor::of(const GroupProblem& problem, UncertaintyClass uncertainty) {
  return {problem.alternatives.size(), problem.criteria.size(), problem.makers.size(), uncertainty};
}

std::array<double, 8> SchemeDescriptor::features() const {
  std::array<double, 8> f{};
  f[0] = std::log1p(static_cast<double>(alternativeCount));
  f[1] = std::log1p(static_cast<double>(criterionCount));
  f[2] = std::log1p(static_cast<double>(makerCount));
  f[3 + static_cast<std::size_t>(uncertainty)] = 1.0;
  return f;
}

double descriptor_similarity(const SchemeDescriptor& a, const SchemeDescriptor& b) {
  const auto fa = a.features();
  const auto fb = b.features();
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < fa.size(); ++i) {
    dot += fa[i] * fb[i];
    na += fa[i] * fa[i];
    nb += fb[i] * fb[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

json to_json(const SchemeRecord& r) {
  return {{"id", r.id},
          {"sessionId", r.sessionId},
          {"descriptor",
           {{"alternativeCount", r.descriptor.alternativeCount},
            {"criterionCount", r.descriptor.criterionCount},
            {"makerCount", r.descriptor.makerCount},
            {"uncertaintyClass", to_string(r.descriptor.uncertainty)}}},
          {"method", r.method},
          {"resultOrder", r.resultOrder},
          {"status", to_string(r.status)},
          {"createdAt", r.createdAt},
          {"version", r.version}};
}

SchemeRecord scheme_from_json(const json& j) {
  try {
    SchemeRecord r;
    r.id = j.at("id").get<std::string>();
    r.sessionId = j.at("sessionId").get<std::string>();
    const auto& d = j.at("descriptor");
    r.descriptor.alternativeCount = d.at("alternativeCount").get<std::size_t>();
    r.descriptor.criterionCount = d.at("criterionCount").get<std::size_t>();
    r.descriptor.makerCount = d.at("makerCount").get<std::size_t>();
    auto u = uncertainty_from_string(d.at("uncertaintyClass").get<std::string>());
    auto s = scheme_status_from_string(j.at("status").get<std::string>());
    if (!u || !s) throw Error(ErrorCode::ParseError, "bad scheme enum");
    r.descriptor.uncertainty = *u;
    r.status = *s;
    r.method = j.at("method").get<std::string>();
    r.resultOrder = j.at("resultOrder").get<std::vector<std::string>>();
    r.createdAt = j.at("createdAt").get<std::string>();
    r.version = j.at("version").get<std::uint64_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("scheme record: ") + e.what());
  }
}

json SessionRecord::to_json() const {
  return {{"id", id}, {"problem", problem}, {"report", report}, {"schemeRefs", schemeRefs}};
}

SessionRecord SessionRecord::from_json(const json& j) {
  try {
    return {j.at("id").get<std::string>(), j.at("problem"), j.at("report"),
            j.at("schemeRefs").get<std::vector<std::string>>()};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("session record: ") + e.what());
  }
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

void check_id(const std::string& id) {
  const bool ok = !id.empty() && id.size() <= 128 && id.front() != '.' &&
                  std::all_of(id.begin(), id.end(), [](unsigned char c) {
                    return std::isalnum(c) || c == '-' || c == '_' || c == '.';
                  });
  if (!ok) throw Error(ErrorCode::ParseError, "invalid record id '" + id + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

KnowledgeStore::KnowledgeStore(std::filesystem::path root, Clock clock)
    : root_(std::move(root)), clock_(std::move(clock)) {
  std::error_code ec;
  std::filesystem::create_directories(root_ / "sessions", ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create store at " + root_.string() + ": " + ec.message());
  replay();
}

std::filesystem::path KnowledgeStore::session_path(const std::string& id) const {
  return root_ / "sessions" / (id + ".json");
}

void KnowledgeStore::replay() {
  const std::filesystem::path path = root_ / "journal.ndjson";
  std::ifstream in(path, std::ios::binary);
  if (!in) return;
  std::stringstream ss;
  ss << in.rdbuf();
  in.close();
  const std::string text = ss.str();
  std::size_t start = 0;
  for (std::size_t end = text.find('\n'); end != std::string::npos; end = text.find('\n', start)) {
    const std::string_view line(text.data() + start, end - start);
    start = end + 1;
    json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object()) continue;
    const std::string op = rec.value("op", "");
    const std::string id = rec.value("id", "");
    if (op == "session") {
      sessionOrder_.push_back(id);
    } else if (op == "scheme" || op == "transition") {
      SchemeRecord r = scheme_from_json(rec.at("payload"));
      if (op == "scheme") schemeOrder_.push_back(r.id);
      schemeVersions_[r.id].push_back(std::move(r));
    }
  }
  // Drop a torn trailing write so the next append starts on a fresh line.
  if (start < text.size()) {
    std::error_code ec;
    std::filesystem::resize_file(path, start, ec);
    if (ec) throw Error(ErrorCode::IoFailure, "cannot repair journal: " + ec.message());
  }
}

void KnowledgeStore::append(const std::string& op, const std::string& id, std::uint64_t version,
                            const json& payload) {
  const json rec = {{"op", op}, {"id", id}, {"version", version}, {"timestamp", clock_()}, {"payload", payload}};
  std::ofstream out(root_ / "journal.ndjson", std::ios::binary | std::ios::app);
  out << rec.dump() << '\n';
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "journal append failed");
}

std::string KnowledgeStore::persist_session(const SessionRecord& session) {
  check_id(session.id);
  std::unique_lock lock(mutex_);
  if (std::find(sessionOrder_.begin(), sessionOrder_.end(), session.id) != sessionOrder_.end() ||
      std::filesystem::exists(session_path(session.id))) {
    throw Error(ErrorCode::DuplicateId, session.id);
  }
  const std::filesystem::path target = session_path(session.id);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << session.to_json().dump();
    out.flush();
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot publish " + target.string() + ": " + ec.message());
  append("session", session.id, 1, {{"file", "sessions/" + session.id + ".json"}});
  sessionOrder_.push_back(session.id);
  return session.id;
}

std::string KnowledgeStore::load_session_text(const std::string& id) const {
  check_id(id);
  std::shared_lock lock(mutex_);
  if (std::find(sessionOrder_.begin(), sessionOrder_.end(), id) == sessionOrder_.end()) {
    throw Error(ErrorCode::UnknownRecord, id);
  }
  return read_file(session_path(id));
}

SessionRecord KnowledgeStore::load_session(const std::string& id) const {
  const json doc = json::parse(load_session_text(id), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::IoFailure, "corrupt session document " + id);
  return SessionRecord::from_json(doc);
}

bool KnowledgeStore::has_session(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return std::find(sessionOrder_.begin(), sessionOrder_.end(), id) != sessionOrder_.end();
}

std::vector<std::string> KnowledgeStore::session_ids() const {
  std::shared_lock lock(mutex_);
  return sessionOrder_;
}

SchemeRecord KnowledgeStore::add_scheme(SchemeRecord scheme) {
  check_id(scheme.id);
  std::unique_lock lock(mutex_);
  if (schemeVersions_.contains(scheme.id)) throw Error(ErrorCode::DuplicateId, scheme.id);
  scheme.status = SchemeStatus::Acquired;
  scheme.version = 1;
  if (scheme.createdAt.empty()) scheme.createdAt = clock_();
  append("scheme", scheme.id, scheme.version, to_json(scheme));
  schemeOrder_.push_back(scheme.id);
  schemeVersions_[scheme.id].push_back(scheme);
  return scheme;
}

SchemeRecord KnowledgeStore::transition_status(const std::string& id, SchemeStatus next) {
  std::unique_lock lock(mutex_);
  auto it = schemeVersions_.find(id);
  if (it == schemeVersions_.end()) throw Error(ErrorCode::UnknownRecord, id);
  SchemeRecord updated = it->second.back();
  if (!is_allowed_transition(updated.status, next)) {
    throw Error(ErrorCode::IllegalTransition,
                std::string(to_string(updated.status)) + " -> " + std::string(to_string(next)));
  }
  updated.status = next;
  ++updated.version;
  append("transition", id, updated.version, to_json(updated));
  it->second.push_back(updated);
  return updated;
}

std::optional<SchemeRecord> KnowledgeStore::scheme(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = schemeVersions_.find(id);
  if (it == schemeVersions_.end()) return std::nullopt;
  return it->second.back();
}

std::vector<SchemeRecord> KnowledgeStore::scheme_history(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = schemeVersions_.find(id);
  if (it == schemeVersions_.end()) return {};
  return it->second;
}

std::vector<SchemeRecord> KnowledgeStore::schemes() const {
  std::shared_lock lock(mutex_);
  std::vector<SchemeRecord> out;
  for (const auto& id : schemeOrder_) out.push_back(schemeVersions_.at(id).back());
  return out;
}

std::vector<ScoredScheme> KnowledgeStore::retrieve_similar_schemes(const SchemeDescriptor& descriptor,
                                                                   std::size_t k) const {
  std::shared_lock lock(mutex_);
  struct Candidate {
    ScoredScheme scored;
    std::size_t sequence;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < schemeOrder_.size(); ++i) {
    const SchemeRecord& latest = schemeVersions_.at(schemeOrder_[i]).back();
    if (latest.status != SchemeStatus::Emitted) continue;
    candidates.push_back({{latest, descriptor_similarity(descriptor, latest.descriptor)}, i});
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.scored.similarity != b.scored.similarity) return a.scored.similarity > b.scored.similarity;
    if (a.scored.record.createdAt != b.scored.record.createdAt) {
      return a.scored.record.createdAt > b.scored.record.createdAt;
    }
    return a.sequence > b.sequence;
  });
  std::vector<ScoredScheme> out;
  for (std::size_t i = 0; i < candidates.size() && i < k; ++i) out.push_back(std::move(candidates[i].scored));
  return out;
}

}  // namespace gmcdm
