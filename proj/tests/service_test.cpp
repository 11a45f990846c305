#include <doctest.h>

#include <httplib.h>

#include <filesystem>
#include <thread>

#include <unistd.h>

#include "absence/io.hpp"
#include "absence/service.hpp"

using namespace absence;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

class Server {
 public:
  explicit Server(ServiceOptions options = {}) : core_(std::move(options)), http_(core_) {
    port_ = http_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { http_.listen(); });
    http_.wait_until_ready();
  }
  ~Server() {
    http_.stop();
    thread_.join();
  }

  httplib::Client client() const { return httplib::Client("127.0.0.1", port_); }
  ServiceCore& core() { return core_; }

 private:
  ServiceCore core_;
  HttpService http_;
  int port_ = 0;
  std::thread thread_;
};

json body(const httplib::Result& r) { return json::parse(r->body); }

std::string create(httplib::Client& c, const json& request) {
  auto r = c.Post("/sessions", request.dump(), "application/json");
  REQUIRE(r);
  REQUIRE(r->status == 201);
  return body(r).at("id").get<std::string>();
}

httplib::Result post_round(httplib::Client& c, const std::string& id, const json& request) {
  return c.Post("/sessions/" + id + "/rounds", request.dump(), "application/json");
}

}  // namespace

TEST_CASE("creating sessions reports the engine and its round limit") {
  Server server;
  auto c = server.client();
  auto r = c.Post("/sessions", R"({"complete":4,"budgets":1})", "application/json");
  REQUIRE(r);
  CHECK(r->status == 201);
  auto j = body(r);
  CHECK(j.at("limit") == 5);
  CHECK(j.at("engine") == "optimal-small");
  CHECK(j.at("id").get<std::string>().size() == 32);

  auto k3 = c.Post("/sessions", R"({"complete":3,"budgets":0})", "application/json");
  CHECK(body(k3).at("limit") == 3);

  auto edgeless = c.Post("/sessions", R"({"graph":{"vertices":["a","b"],"edges":[]}})", "application/json");
  CHECK(edgeless->status == 422);
  auto malformed = c.Post("/sessions", "{", "application/json");
  CHECK(malformed->status == 400);
  CHECK(body(malformed).contains("error"));
  auto bad_graph = c.Post("/sessions", R"({"graph":{"vertices":["a"],"edges":[["a","z"]]}})",
                          "application/json");
  CHECK(bad_graph->status == 400);
  CHECK(server.core().session_count() == 2);
}

TEST_CASE("playing rounds") {
  Server server;
  auto c = server.client();
  auto id = create(c, {{"complete", 4}, {"budgets", 1}});

  auto first = post_round(c, id, {{"round", 1}, {"absent", json::array()}});
  REQUIRE(first->status == 200);
  CHECK(body(first).at("matches").size() == 2);

  auto second = post_round(c, id, {{"round", 2}, {"absent", {"1"}}});
  REQUIRE(second->status == 200);
  for (const auto& m : body(second).at("matches")) {
    CHECK(m.at(0) != "1");
    CHECK(m.at(1) != "1");
  }
  CHECK(body(second).at("budgets").at("1") == 0);

  auto again = post_round(c, id, {{"round", 3}, {"absent", {"1"}}});
  CHECK(again->status == 409);

  auto replay = post_round(c, id, {{"round", 2}, {"absent", {"1"}}});
  CHECK(replay->status == 200);
  CHECK(body(replay).at("replayed") == true);
  CHECK(body(replay).at("matches") == body(second).at("matches"));

  auto conflict = post_round(c, id, {{"round", 2}, {"absent", json::array()}});
  CHECK(conflict->status == 409);
  auto skipped = post_round(c, id, {{"round", 9}});
  CHECK(skipped->status == 409);
  CHECK(body(skipped).at("expected") == 3);
  auto stranger = post_round(c, id, {{"absent", {"zz"}}});
  CHECK(stranger->status == 422);

  bool finished = false;
  for (int k = 3; k <= 5 && !finished; ++k) {
    auto r = post_round(c, id, {{"round", k}});
    REQUIRE(r->status == 200);
    finished = body(r).at("finished").get<bool>();
    CHECK(body(r).at("on_track") == true);
  }
  CHECK(finished);
  CHECK(post_round(c, id, json::object())->status == 409);

  auto state = c.Get("/sessions/" + id);
  REQUIRE(state->status == 200);
  auto s = body(state);
  CHECK(s.at("finished") == true);
  CHECK(s.at("pending") == 0);

  auto csv = c.Get("/sessions/" + id + "/timetable?format=csv");
  REQUIRE(csv->status == 200);
  CHECK(csv->body.rfind("Player,Round 1", 0) == 0);
  auto tj = c.Get("/sessions/" + id + "/timetable?format=json");
  CHECK(tj->status == 200);
  CHECK(c.Get("/sessions/" + id + "/timetable?format=xml")->status == 400);

  CHECK(c.Delete("/sessions/" + id)->status == 200);
  CHECK(c.Get("/sessions/" + id)->status == 404);
  CHECK(post_round(c, id, json::object())->status == 404);
}

TEST_CASE("sessions with absences fixed in advance") {
  Server server;
  auto c = server.client();
  const json edges = json::array({json::array({"A", "B"}), json::array({"A", "C"}), json::array({"B", "C"})});
  json request{{"graph", {{"vertices", {"A", "B", "C"}}, {"edges", edges}}},
               {"mode", "prefixed"},
               {"absences", {{"A", {3}}, {"B", {3}}, {"C", {4}}}}};
  auto id = create(c, request);
  auto wrong = post_round(c, id, {{"absent", {"A"}}});
  CHECK(wrong->status == 422);
  json last;
  for (int k = 1; k <= 4; ++k) {
    auto r = post_round(c, id, {{"round", k}});
    REQUIRE(r->status == 200);
    last = body(r);
  }
  CHECK(last.at("finished") == true);

  auto g = Multigraph::build({"A", "B", "C"}, {{"A", "B"}, {"A", "C"}, {"B", "C"}});
  auto doc = body(c.Get("/sessions/" + id));
  json schedule{{"rounds", json::array()}};
  for (const auto& r : doc.at("rounds"))
    schedule["rounds"].push_back({{"absent", r.at("absent")}, {"matches", r.at("matches")}});
  auto s = io::parse_schedule(schedule, g);
  auto cmap = io::parse_absences(request.at("absences"), g);
  CHECK(verify_schedule(g, cmap, s).empty());

  auto missing = c.Post("/sessions", R"({"complete":3,"mode":"prefixed"})", "application/json");
  CHECK(missing->status == 400);
}

TEST_CASE("budget violations are conflicts") {
  Server server;
  auto c = server.client();
  auto id = create(c, {{"complete", 3}, {"budgets", 1}, {"engine", "greedy"}});
  CHECK(post_round(c, id, {{"absent", {"1"}}})->status == 200);
  CHECK(post_round(c, id, {{"absent", {"1"}}})->status == 409);
}

TEST_CASE("sessions survive a restart") {
  auto dir = fs::temp_directory_path() / ("absence_service_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string id;
  json before;
  {
    Server server({.data_dir = dir});
    auto c = server.client();
    id = create(c, {{"complete", 4}, {"budgets", 1}});
    post_round(c, id, {{"absent", {"2"}}});
    post_round(c, id, json::object());
    auto gone = create(c, {{"complete", 3}});
    c.Delete("/sessions/" + gone);
    before = body(c.Get("/sessions/" + id));
  }
  {
    Server server({.data_dir = dir});
    CHECK(server.core().session_count() == 1);
    auto c = server.client();
    auto after = body(c.Get("/sessions/" + id));
    CHECK(after.at("rounds") == before.at("rounds"));
    CHECK(after.at("players") == before.at("players"));
    CHECK(post_round(c, id, {{"round", 3}})->status == 200);
  }
  fs::remove_all(dir);
}

TEST_CASE("spec and CORS") {
  Server server;
  auto c = server.client();
  auto spec = c.Get("/spec");
  REQUIRE(spec->status == 200);
  CHECK(body(spec).at("openapi") == "3.0.3");
  CHECK(spec->get_header_value("Access-Control-Allow-Origin") == "*");
  auto options = c.Options("/sessions");
  CHECK(options->status == 204);
}
