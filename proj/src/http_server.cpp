#include "gmcdm/http_server.hpp"

#include <httplib.h>

namespace gmcdm {

namespace {

void reply(httplib::Response& res, const ServiceResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

// Parses a JSON body or answers 400.
std::optional<nlohmann::json> body_of(const httplib::Request& req, httplib::Response& res) {
  auto doc = nlohmann::json::parse(req.body, nullptr, false);
  if (doc.is_discarded()) {
    reply(res, {400, {{"error", "PARSE_ERROR"}, {"message", "request body is not valid JSON"}}});
    return std::nullopt;
  }
  return doc;
}

}  // namespace

HttpServer::HttpServer(SessionService& service, std::optional<std::filesystem::path> staticDir)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  install_routes();
  if (staticDir) server_->set_mount_point("/", staticDir->string());
}

HttpServer::~HttpServer() { stop(); }

void HttpServer::install_routes() {
  auto& s = *server_;
  s.Post("/api/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto body = body_of(req, res)) reply(res, service_.create_session(*body));
  });
  s.Get(R"(/api/sessions/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.get_session(req.matches[1]));
  });
  s.Put(R"(/api/sessions/([^/]+)/judgments/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto body = body_of(req, res)) reply(res, service_.put_judgment(req.matches[1], req.matches[2], *body));
  });
  s.Post(R"(/api/sessions/([^/]+)/run)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.run(req.matches[1]));
  });
  s.Get(R"(/api/sessions/([^/]+)/result)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.result(req.matches[1]));
  });
  s.Get(R"(/api/sessions/([^/]+)/consensus)", [this](const httplib::Request& req, httplib::Response& res) {
    reply(res, service_.consensus(req.matches[1]));
  });
  s.Post(R"(/api/sessions/([^/]+)/whatif)", [this](const httplib::Request& req, httplib::Response& res) {
    if (auto body = body_of(req, res)) reply(res, service_.whatif(req.matches[1], *body));
  });
  s.Get("/api/schemes", [this](const httplib::Request& req, httplib::Response& res) {
    if (!req.has_param("similarTo")) {
      reply(res, {400, {{"error", "PARSE_ERROR"}, {"message", "similarTo is required"}}});
      return;
    }
    std::size_t k = 3;
    if (req.has_param("k")) {
      try {
        const long parsed = std::stol(req.get_param_value("k"));
        k = parsed < 0 ? 0 : static_cast<std::size_t>(parsed);
      } catch (const std::exception&) {
        reply(res, {400, {{"error", "PARSE_ERROR"}, {"message", "k must be an integer"}}});
        return;
      }
    }
    reply(res, service_.similar_schemes(req.get_param_value("similarTo"), k));
  });
}

bool HttpServer::listen(const std::string& host, int port) { return server_->listen(host, port); }

int HttpServer::bind_any_port(const std::string& host) { return server_->bind_to_any_port(host); }

bool HttpServer::listen_after_bind() { return server_->listen_after_bind(); }

void HttpServer::wait_until_ready() const { server_->wait_until_ready(); }

void HttpServer::stop() {
  if (server_ && server_->is_running()) server_->stop();
}

}  // namespace gmcdm
