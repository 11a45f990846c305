#pragma once

// Live tournament sessions over HTTP/JSON.
//
//   POST   /sessions                      create (graph or complete:n, budgets, mode)
//   POST   /sessions/{id}/rounds          {"round": k, "absent": [...]}
//   GET    /sessions/{id}                 full state
//   GET    /sessions/{id}/timetable       ?format=csv|json
//   DELETE /sessions/{id}
//   GET    /spec                          OpenAPI description
//
// Every accepted event is appended to <data-dir>/events.jsonl and replayed on
// start-up.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>

#include <json.hpp>

#include "absence/engine.hpp"

namespace httplib {
class Server;
}

namespace absence {

struct ServiceResponse {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

struct ServiceOptions {
  std::optional<std::filesystem::path> data_dir;
  // Node budget for choosing the game-solver engine at creation time.
  SearchLimits solver_limits{2'000'000};
};

class ServiceCore {
 public:
  explicit ServiceCore(ServiceOptions options = {});
  ~ServiceCore();

  ServiceResponse create_session(const std::string& body);
  ServiceResponse post_round(const std::string& id, const std::string& body);
  ServiceResponse get_session(const std::string& id);
  ServiceResponse timetable(const std::string& id, const std::string& format);
  ServiceResponse delete_session(const std::string& id);
  static ServiceResponse openapi();

  std::size_t session_count() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  void append_event(const nlohmann::json& event);
  void replay();
  std::shared_ptr<Session> build_session(const std::string& id, const nlohmann::json& request,
                                         const std::optional<nlohmann::json>& plan);

  ServiceOptions options_;
  mutable std::shared_mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mutex log_mutex_;
  bool replaying_ = false;
};

class HttpService {
 public:
  explicit HttpService(ServiceCore& core);
  ~HttpService();

  // Binds to the port (0 picks a free one) and returns the bound port.
  int bind(const std::string& host, int port);
  // Blocks until stop() is called.
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  ServiceCore& core_;
  std::unique_ptr<httplib::Server> server_;
};

}  // namespace absence
