#include "gmcdm/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "gmcdm/error.hpp"
#include "gmcdm/http_server.hpp"
#include "gmcdm/json_io.hpp"
#include "gmcdm/pipeline.hpp"
#include "gmcdm/rough.hpp"
#include "gmcdm/session_service.hpp"

namespace gmcdm {

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Loaded {
  json doc;
  GroupProblem problem;
};

Loaded load_problem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open problem file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json doc = json::parse(ss.str(), nullptr, false);
  if (doc.is_discarded()) throw Error(ErrorCode::ParseError, "'" + path + "' is not valid JSON");
  GroupProblem problem = problem_from_json(doc);
  return {std::move(doc), std::move(problem)};
}

std::optional<std::string> store_root(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kStoreEnvVar); env != nullptr && *env != '\0') return std::string(env);
  return std::nullopt;
}

void check_method(const std::string& method) {
  if (!is_known_method(method)) throw UsageError("unknown method '" + method + "'");
}

// Strict validation gate shared by the evaluating commands.
bool gate(const GroupProblem& problem, std::ostream& out) {
  const ValidationReport report = validate_problem(problem, true);
  if (!report.has_errors()) return true;
  out << to_json(report).dump(2) << '\n';
  return false;
}

struct Settings {
  std::string file;
  std::string method;
  std::string criterion;
  std::string out;
  std::string store;
  std::string staticDir;
  std::string host = "127.0.0.1";
  std::string utility = "linear";
  double alpha = 1.0;
  double delta = 0.0;
  double threshold = 0.5;
  std::uint64_t seed = 42;
  std::size_t samples = 1000;
  std::size_t maxConditions = 3;
  int port = 8080;
  bool strict = false;
  bool deterministic = false;
};

MethodOptions method_options(const Settings& s) {
  MethodOptions m;
  m.seed = s.seed;
  m.samples = s.samples;
  m.maxConditions = s.maxConditions;
  if (s.utility == "exponential") m.utility = UtilityFunction::exponential(s.alpha);
  return m;
}

KnowledgeStore::Clock clock_for(const Settings& s) {
  if (s.deterministic) return [] { return std::string(kDeterministicTimestamp); };
  return utc_now;
}

int cmd_validate(const Settings& s, std::ostream& out) {
  const auto loaded = load_problem(s.file);
  const ValidationReport report = validate_problem(loaded.problem, s.strict);
  out << to_json(report).dump(2) << '\n';
  return report.has_errors() ? kInvalid : kOk;
}

int cmd_classify(const Settings& s, std::ostream& out) {
  const auto loaded = load_problem(s.file);
  const EnvironmentReport env = classify_problem(loaded.problem);
  json doc = to_json(env);
  doc["recommendedMethods"] = recommend_methods(env);
  out << doc.dump(2) << '\n';
  return kOk;
}

int cmd_rank(const Settings& s, std::ostream& out) {
  check_method(s.method);
  const auto loaded = load_problem(s.file);
  if (!gate(loaded.problem, out)) return kInvalid;
  const DecisionMatrix group = aggregate_group_matrix(loaded.problem);
  out << to_json(run_method(s.method, loaded.problem, group, method_options(s))).dump(2) << '\n';
  return kOk;
}

int cmd_pipeline(const Settings& s, std::ostream& out) {
  if (!s.method.empty()) check_method(s.method);
  const auto loaded = load_problem(s.file);
  PipelineOptions options;
  options.method = method_options(s);
  if (!s.method.empty()) options.methodOverride = s.method;

  std::optional<KnowledgeStore> store;
  if (auto root = store_root(s.store)) store.emplace(*root, clock_for(s));
  const PipelineReport report = run_pipeline(loaded.problem, options, store ? &*store : nullptr);
  const json doc = report.to_json();
  if (store && report.ok()) {
    const std::string id = s.deterministic
                               ? loaded.problem.id + "-" + std::to_string(store->session_ids().size() + 1)
                               : random_token();
    archive_run(*store, id, loaded.problem, problem_to_json(loaded.problem), report);
  }
  const std::string text = doc.dump(2) + "\n";
  if (!s.out.empty()) {
    std::ofstream file(s.out, std::ios::binary | std::ios::trunc);
    file << text;
    if (!file) throw Error(ErrorCode::IoFailure, "cannot write '" + s.out + "'");
  } else {
    out << text;
  }
  return report.ok() ? kOk : kInvalid;
}

int cmd_consensus(const Settings& s, std::ostream& out) {
  check_method(s.method);
  const auto loaded = load_problem(s.file);
  if (!gate(loaded.problem, out)) return kInvalid;
  ConsensusOptions copts;
  copts.conflictThreshold = s.threshold;
  out << to_json(consensus(loaded.problem, s.method, method_options(s), copts)).dump(2) << '\n';
  return kOk;
}

int cmd_whatif(const Settings& s, std::ostream& out) {
  check_method(s.method);
  const auto loaded = load_problem(s.file);
  if (!gate(loaded.problem, out)) return kInvalid;
  out << to_json(whatif_weights(loaded.problem, s.method, s.criterion, s.delta, method_options(s))).dump(2) << '\n';
  return kOk;
}

int cmd_drsa(const Settings& s, std::ostream& out) {
  const auto loaded = load_problem(s.file);
  const ValidationReport report = validate_problem(loaded.problem, false);
  if (report.has_errors()) {
    out << to_json(report).dump(2) << '\n';
    return kInvalid;
  }
  const SortingTable table = SortingTable::from_problem(loaded.problem);
  json approximations = json::array();
  for (const auto& a : union_approximations(table)) approximations.push_back(to_json(a));
  json rules = json::array();
  for (const auto& r : induce_rules(table, s.maxConditions)) rules.push_back(to_json(r, table));
  out << json{{"classCount", table.classCount},
              {"quality", quality_gamma(table)},
              {"approximations", std::move(approximations)},
              {"rules", std::move(rules)}}
             .dump(2)
      << '\n';
  return kOk;
}

int cmd_serve(const Settings& s, std::ostream& out) {
  auto root = store_root(s.store);
  if (!root) throw UsageError(std::string("serve needs --store or ") + kStoreEnvVar);
  KnowledgeStore store(*root, clock_for(s));
  PipelineOptions options;
  options.method = method_options(s);
  SessionService::IdGenerator ids = random_token;
  if (s.deterministic) {
    auto counter = std::make_shared<std::size_t>(0);
    ids = [counter] { return "session" + std::to_string(++*counter); };
  }
  SessionService service(store, options, ids);
  std::optional<std::filesystem::path> staticDir;
  if (!s.staticDir.empty()) staticDir = s.staticDir;
  HttpServer server(service, staticDir);
  out << "listening on " << s.host << ":" << s.port << std::endl;
  if (!server.listen(s.host, s.port)) throw Error(ErrorCode::IoFailure, "cannot bind port " + std::to_string(s.port));
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Group multi-criteria decision engine"};
  app.require_subcommand(1);
  Settings s;

  auto* validate = app.add_subcommand("validate", "Check a problem file against the model invariants");
  validate->add_option("file", s.file, "Problem file")->required();
  validate->add_flag("--strict", s.strict, "Treat missing cells as errors");

  auto* classify = app.add_subcommand("classify", "Classify the uncertainty type and recommend methods");
  classify->add_option("file", s.file, "Problem file")->required();

  auto add_method_flags = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--method", s.method, "Method id");
    if (required) opt->required();
    cmd->add_option("--seed", s.seed, "Random seed for stochastic simulation");
    cmd->add_option("--samples", s.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
    cmd->add_option("--utility", s.utility, "Utility shape")->check(CLI::IsMember({"linear", "exponential"}));
    cmd->add_option("--alpha", s.alpha, "Risk aversion for exponential utility")->check(CLI::PositiveNumber);
  };

  auto* rank = app.add_subcommand("rank", "Rank the aggregated group plane with one method");
  rank->add_option("file", s.file, "Problem file")->required();
  add_method_flags(rank, true);

  auto* pipeline = app.add_subcommand("pipeline", "Run all six decision stages");
  pipeline->add_option("file", s.file, "Problem file")->required();
  pipeline->add_option("--out", s.out, "Write the report here instead of standard output");
  pipeline->add_option("--store", s.store, "Knowledge store directory");
  pipeline->add_flag("--deterministic", s.deterministic, "Fixed timestamps and derived session ids");
  add_method_flags(pipeline, false);

  auto* cons = app.add_subcommand("consensus", "Measure agreement between makers and the group");
  cons->add_option("file", s.file, "Problem file")->required();
  cons->add_option("--threshold", s.threshold, "Conflict distance threshold")->check(CLI::Range(0.0, 1.0));
  add_method_flags(cons, true);

  auto* whatif = app.add_subcommand("whatif", "Shift one group criterion weight and re-rank");
  whatif->add_option("file", s.file, "Problem file")->required();
  whatif->add_option("--criterion", s.criterion, "Criterion id")->required();
  whatif->add_option("--delta", s.delta, "Weight change")->required();
  add_method_flags(whatif, true);

  auto* drsa = app.add_subcommand("drsa", "Dominance-based rough set analysis of the sorting table");
  drsa->add_option("file", s.file, "Problem file")->required();
  drsa->add_option("--max-conditions", s.maxConditions, "Largest rule conjunction")->check(CLI::PositiveNumber);

  auto* serve = app.add_subcommand("serve", "Serve the session API over HTTP");
  serve->add_option("--port", s.port, "TCP port")->required()->check(CLI::Range(1, 65535));
  serve->add_option("--store", s.store, "Knowledge store directory");
  serve->add_option("--host", s.host, "Bind address");
  serve->add_option("--static", s.staticDir, "Directory served under /");
  serve->add_flag("--deterministic", s.deterministic, "Fixed timestamps and sequential session ids");
  serve->add_option("--seed", s.seed, "Random seed for stochastic simulation");
  serve->add_option("--samples", s.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(s, out);
    if (classify->parsed()) return cmd_classify(s, out);
    if (rank->parsed()) return cmd_rank(s, out);
    if (pipeline->parsed()) return cmd_pipeline(s, out);
    if (cons->parsed()) return cmd_consensus(s, out);
    if (whatif->parsed()) return cmd_whatif(s, out);
    if (drsa->parsed()) return cmd_drsa(s, out);
    if (serve->parsed()) return cmd_serve(s, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << json{{"error", to_string(e.code())}, {"message", e.what()}}.dump() << '\n';
    return kInvalid;
  }
  return kUsage;
}

}  // namespace gmcdm
