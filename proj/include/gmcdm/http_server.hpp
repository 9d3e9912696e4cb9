#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "gmcdm/session_service.hpp"

namespace httplib {
class Server;
}

namespace gmcdm {

/// Binds SessionService to the /api routes; optionally serves a static
/// directory (the console build) under /.
class HttpServer {
 public:
  explicit HttpServer(SessionService& service, std::optional<std::filesystem::path> staticDir = std::nullopt);
  ~HttpServer();

  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Blocks until stop(). Returns false if the port cannot be bound.
  bool listen(const std::string& host, int port);
  /// Binds an ephemeral port and returns it (or -1); call listen_after_bind next.
  int bind_any_port(const std::string& host);
  bool listen_after_bind();
  void wait_until_ready() const;
  void stop();

 private:
  void install_routes();

  SessionService& service_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace gmcdm
