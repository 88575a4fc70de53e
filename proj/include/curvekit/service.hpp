#pragma once

// JSON-over-HTTP facade. Api is transport-independent (method, path, body in;
// status and JSON body out) so it can be exercised without sockets; Server
// binds it to cpp-httplib.
//
//   GET  /curves
//   POST /parse        {expr, vars}
//   POST /transform    {poly, vars | slug, step}
//   POST /analyze      {poly, vars | slug, at: [p, q]}
//   POST /raster       {poly, vars | slug, viewport, cells, format?}
//   POST /sessions     {seed, steps?}
//   GET  /sessions/{id}
//   POST /sessions/{id}/steps {step}
//   POST /sessions/{id}/undo
//   GET  /sessions/{id}/export

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>

#include "curvekit/pipeline.hpp"

namespace curvekit {

struct ApiResponse {
  int status = 200;
  std::string body;
};

class Api {
 public:
  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

 private:
  struct Session {
    std::string id;
    Pipeline pipeline;
    PipelineRun run;
  };
  struct Slot {
    explicit Slot(Session s) : session(std::move(s)) {}
    std::mutex mu;
    Session session;
  };

  json create_session(const json& body);
  std::shared_ptr<Slot> find_session(const std::string& id);

  std::shared_mutex sessions_mu_;
  std::map<std::string, std::shared_ptr<Slot>> sessions_;
  std::atomic<std::uint64_t> next_id_{1};
};

class Server {
 public:
  explicit Server(Api& api, std::string cors_origin = "*");
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  /// Binds to host:port (port 0 picks a free port); returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Blocks until stop() is called.
  bool listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace curvekit
