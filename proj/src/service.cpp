#include "absence/service.hpp"

#include <httplib.h>

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>
#include <sstream>

#include "absence/bounds.hpp"
#include "absence/errors.hpp"
#include "absence/io.hpp"

namespace absence {

using nlohmann::json;

struct ServiceCore::Session {
  std::string id;
  std::mutex mutex;
  json request;
  json plan;
  SessionState state;
  std::unique_ptr<OrganizerEngine> engine;
  std::optional<AbsenceAssignment> prefixed;
  std::string created;
  std::string updated;
};

namespace {

std::string now_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string new_token() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 2; ++i) {
    const auto word = rng();
    for (int shift = 60; shift >= 0; shift -= 4) out << ((word >> shift) & 0xF);
  }
  return out.str();
}

ServiceResponse reply(int status, const json& body) { return {status, body.dump(), "application/json"}; }

ServiceResponse error(int status, const std::string& message, json extra = json::object()) {
  extra["error"] = message;
  return reply(status, extra);
}

json round_json(const Multigraph& g, const Schedule& s, int k) {
  const auto& r = s.rounds.at(k - 1);
  json matches = json::array();
  for (const auto& e : r.matches) matches.push_back(io::edge_to_json(g, e));
  return {{"round", k}, {"absent", io::vertex_list_to_json(g, r.absent)}, {"matches", matches}};
}

}  // namespace

ServiceCore::ServiceCore(ServiceOptions options) : options_(std::move(options)) {
  if (options_.data_dir) {
    std::filesystem::create_directories(*options_.data_dir);
    replay();
  }
}

ServiceCore::~ServiceCore() = default;

std::size_t ServiceCore::session_count() const {
  std::shared_lock lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<ServiceCore::Session> ServiceCore::find(const std::string& id) const {
  std::shared_lock lock(sessions_mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

void ServiceCore::append_event(const json& event) {
  if (!options_.data_dir || replaying_) return;
  std::lock_guard lock(log_mutex_);
  std::ofstream out(*options_.data_dir / "events.jsonl", std::ios::app);
  out << event.dump() << "\n";
  out.flush();
  if (!out) throw Error("cannot append to the event log");
}

std::shared_ptr<ServiceCore::Session> ServiceCore::build_session(
    const std::string& id, const json& request, const std::optional<json>& plan) {
  if (!request.is_object()) throw InputError("request body must be a JSON object");
  auto session = std::make_shared<Session>();
  session->id = id;
  session->request = request;

  Multigraph g;
  BudgetMap t;
  bool has_budgets = false;
  if (request.contains("complete")) {
    const auto& n = request.at("complete");
    if (!n.is_number_integer() || n.get<int>() < 1 || n.get<int>() > 64)
      throw InputError("complete: expected a player count between 1 and 64");
    g = complete_graph(n.get<int>());
    t = BudgetMap::constant(g.vertex_count(), 0);
  } else if (request.contains("graph")) {
    auto doc = io::parse_graph(request.at("graph"));
    g = std::move(doc.graph);
    t = doc.budgets;
    has_budgets = doc.has_budgets;
  } else {
    throw InputError("request needs 'graph' or 'complete'");
  }
  if (request.contains("budgets")) {
    t = io::parse_budgets(request.at("budgets"), g);
    has_budgets = true;
  }
  if (g.edgeless()) throw VacuousBound("the graph has no games to schedule");

  const auto mode = parse_session_mode(request.value("mode", std::string("online")));
  std::string engine;
  int limit = 0;
  std::string source;
  if (mode == SessionMode::prefixed) {
    if (!request.contains("absences")) throw InputError("prefixed sessions need 'absences'");
    auto c = io::parse_absences(request.at("absences"), g);
    if (!has_budgets) t = c.counts();
    if (!c.is_t_labeling(t)) throw BudgetViolation("absences exceed the budgets");
    session->engine = engine_prefixed(g, c, options_.solver_limits);
    session->prefixed = c;
    engine = "prefixed";
    if (plan) {
      limit = plan->at("limit").get<int>();
      source = plan->at("limit_source").get<std::string>();
    } else {
      limit = chi_prime_c(g, c, options_.solver_limits).value;
      source = "fixed-absence optimum";
    }
  } else if (plan) {
    engine = plan->at("engine").get<std::string>();
    limit = plan->at("limit").get<int>();
    source = plan->at("limit_source").get<std::string>();
  } else if (request.contains("engine")) {
    engine = request.at("engine").get<std::string>();
    if (engine == "greedy") {
      limit = ub_shannon(g, t);
      source = "shannon bound";
    } else if (engine == "painting") {
      auto blocks = detect_bipartition(g);
      if (!blocks) throw VacuousBound("the painting engine needs a bipartite graph");
      limit = ub_bipartite(g, *blocks, t);
      source = "bipartite bound";
    } else if (engine == "optimal-small") {
      limit = chi_ol_exact(g, t, OnlineOptions{true, options_.solver_limits}).value;
      source = "game value";
    } else {
      throw InputError("unknown engine '" + engine + "'");
    }
  } else {
    auto p = plan_engine(g, t, options_.solver_limits);
    engine = p.engine;
    limit = p.limit;
    source = p.limit_source;
  }
  if (!session->engine) session->engine = make_engine(engine, g, t, limit, options_.solver_limits);
  session->plan = {{"engine", engine}, {"limit", limit}, {"limit_source", source}};
  session->state = start_session(std::move(g), std::move(t), mode, limit, engine);
  session->created = session->updated = now_utc();
  return session;
}

namespace {

json session_json(const std::string& id, const SessionState& s, const json& plan,
                  const std::string& created, const std::string& updated) {
  json players = json::array();
  for (std::size_t v = 0; v < s.graph.vertex_count(); ++v)
    players.push_back({{"name", s.graph.name(static_cast<Vertex>(v))},
                       {"budget", s.original_budgets.at(static_cast<Vertex>(v))},
                       {"budget_left", s.budgets.at(static_cast<Vertex>(v))}});
  json rounds = json::array();
  for (int k = 1; k <= s.rounds_played(); ++k) rounds.push_back(round_json(s.graph, s.transcript, k));
  return {{"id", id},
          {"mode", to_string(s.mode)},
          {"engine", plan.at("engine")},
          {"limit", s.limit},
          {"limit_source", plan.at("limit_source")},
          {"created", created},
          {"updated", updated},
          {"players", players},
          {"rounds", rounds},
          {"rounds_played", s.rounds_played()},
          {"pending", s.pending_count},
          {"finished", s.finished()},
          {"on_track", s.rounds_played() <= s.limit}};
}

}  // namespace

ServiceResponse ServiceCore::create_session(const std::string& body) {
  json request;
  try {
    request = io::parse_json_text(body, "request");
  } catch (const InputError& e) {
    return error(400, e.what());
  }
  std::shared_ptr<Session> session;
  try {
    session = build_session(new_token(), request, std::nullopt);
  } catch (const VacuousBound& e) {
    return error(422, e.what());
  } catch (const BudgetViolation& e) {
    return error(422, e.what());
  } catch (const SearchBudgetExceeded& e) {
    return error(422, e.what());
  } catch (const InputError& e) {
    return error(400, e.what());
  } catch (const json::exception& e) {
    return error(400, std::string("invalid payload: ") + e.what());
  }
  {
    std::unique_lock lock(sessions_mutex_);
    sessions_[session->id] = session;
  }
  append_event({{"event", "create"},
                {"id", session->id},
                {"request", request},
                {"plan", session->plan},
                {"at", session->created}});
  std::lock_guard lock(session->mutex);
  return reply(201, session_json(session->id, session->state, session->plan, session->created,
                                 session->updated));
}

ServiceResponse ServiceCore::post_round(const std::string& id, const std::string& body) {
  auto session = find(id);
  if (!session) return error(404, "unknown session");
  json request;
  try {
    request = body.empty() ? json::object() : io::parse_json_text(body, "request");
    if (!request.is_object()) throw InputError("request body must be a JSON object");
  } catch (const InputError& e) {
    return error(400, e.what());
  }

  std::lock_guard lock(session->mutex);
  auto& s = session->state;
  std::vector<Vertex> absent;
  try {
    if (request.contains("absent"))
      absent = io::parse_vertex_list(request.at("absent"), s.graph, "absent");
  } catch (const InputError& e) {
    return error(422, e.what());
  }

  const int next = s.rounds_played() + 1;
  int k = next;
  if (request.contains("round")) {
    if (!request.at("round").is_number_integer() || request.at("round").get<int>() < 1)
      return error(400, "round: expected a positive integer");
    k = request.at("round").get<int>();
  }
  if (k < next) {
    json previous = round_json(s.graph, s.transcript, k);
    if (s.transcript.rounds[k - 1].absent == absent) {
      previous["replayed"] = true;
      previous["finished"] = s.finished();
      previous["budgets"] = io::budgets_to_json(s.graph, s.budgets);
      return reply(200, previous);
    }
    return error(409, "round " + std::to_string(k) + " was already submitted",
                 {{"round", previous}});
  }
  if (k > next) return error(409, "expected round " + std::to_string(next), {{"expected", next}});
  if (s.finished()) return error(409, "every game has been scheduled", {{"finished", true}});

  if (session->prefixed) {
    auto fixed = session->prefixed->absent_in(k);
    if (request.contains("absent") && absent != fixed)
      return error(422, "absences differ from the ones fixed in advance",
                   {{"expected", io::vertex_list_to_json(s.graph, fixed)}});
    absent = fixed;
  }

  try {
    session_advance(s, *session->engine, absent);
  } catch (const BudgetViolation& e) {
    return error(409, e.what());
  } catch (const SessionFinished& e) {
    return error(409, e.what());
  } catch (const InputError& e) {
    return error(422, e.what());
  } catch (const LosingState& e) {
    return error(500, e.what());
  }
  session->updated = now_utc();
  append_event({{"event", "round"},
                {"id", id},
                {"round", k},
                {"absent", io::vertex_list_to_json(s.graph, absent)},
                {"at", session->updated}});

  json out = round_json(s.graph, s.transcript, k);
  out["budgets"] = io::budgets_to_json(s.graph, s.budgets);
  out["finished"] = s.finished();
  out["on_track"] = s.rounds_played() <= s.limit;
  if (s.finished()) out["timetable"] = io::timetable_json(s.graph, s.transcript);
  return reply(200, out);
}

ServiceResponse ServiceCore::get_session(const std::string& id) {
  auto session = find(id);
  if (!session) return error(404, "unknown session");
  std::lock_guard lock(session->mutex);
  return reply(200, session_json(id, session->state, session->plan, session->created,
                                 session->updated));
}

ServiceResponse ServiceCore::timetable(const std::string& id, const std::string& format) {
  auto session = find(id);
  if (!session) return error(404, "unknown session");
  std::lock_guard lock(session->mutex);
  const auto& s = session->state;
  if (format.empty() || format == "csv")
    return {200, io::timetable_csv(s.graph, s.transcript), "text/csv"};
  if (format == "json") return reply(200, io::timetable_json(s.graph, s.transcript));
  return error(400, "format must be csv or json");
}

ServiceResponse ServiceCore::delete_session(const std::string& id) {
  {
    std::unique_lock lock(sessions_mutex_);
    if (sessions_.erase(id) == 0) return error(404, "unknown session");
  }
  append_event({{"event", "delete"}, {"id", id}, {"at", now_utc()}});
  return reply(200, {{"deleted", id}});
}

void ServiceCore::replay() {
  const auto path = *options_.data_dir / "events.jsonl";
  std::ifstream in(path);
  if (!in) return;
  replaying_ = true;
  std::string line;
  int number = 0;
  try {
    while (std::getline(in, line)) {
      ++number;
      if (line.empty()) continue;
      const auto event = io::parse_json_text(line, path.string() + ":" + std::to_string(number));
      const auto kind = event.at("event").get<std::string>();
      const auto id = event.at("id").get<std::string>();
      if (kind == "create") {
        auto session = build_session(id, event.at("request"), event.at("plan"));
        session->created = session->updated = event.value("at", session->created);
        sessions_[id] = session;
      } else if (kind == "round") {
        auto it = sessions_.find(id);
        if (it == sessions_.end()) throw InputError("round for an unknown session");
        auto& s = it->second->state;
        if (event.at("round").get<int>() != s.rounds_played() + 1)
          throw InputError("rounds out of order");
        session_advance(s, *it->second->engine,
                        io::parse_vertex_list(event.at("absent"), s.graph, "absent"));
        it->second->updated = event.value("at", it->second->updated);
      } else if (kind == "delete") {
        sessions_.erase(id);
      } else {
        throw InputError("unknown event '" + kind + "'");
      }
    }
  } catch (const std::exception& e) {
    replaying_ = false;
    throw Error(path.string() + ":" + std::to_string(number) + ": cannot replay: " + e.what());
  }
  replaying_ = false;
}

ServiceResponse ServiceCore::openapi() {
  const json session_ref = {{"$ref", "#/components/schemas/Session"}};
  const json error_ref = {{"$ref", "#/components/schemas/Error"}};
  auto response = [](const std::string& description, const json& schema) {
    return json{{"description", description},
                {"content", {{"application/json", {{"schema", schema}}}}}};
  };
  const json id_param = {{"name", "id"}, {"in", "path"}, {"required", true},
                         {"schema", {{"type", "string"}}}};
  json doc = {
      {"openapi", "3.0.3"},
      {"info", {{"title", "Tournament absence scheduler"}, {"version", "1.0.0"}}},
      {"paths",
       {{"/sessions",
         {{"post",
           {{"summary", "Create a session"},
            {"requestBody",
             {{"required", true},
              {"content",
               {{"application/json",
                 {{"schema", {{"$ref", "#/components/schemas/CreateSession"}}}}}}}}},
            {"responses",
             {{"201", response("Session created", session_ref)},
              {"400", response("Invalid payload", error_ref)},
              {"422", response("Graph without games or absences over budget", error_ref)}}}}}}},
        {"/sessions/{id}",
         {{"get",
           {{"summary", "Session state"},
            {"parameters", json::array({id_param})},
            {"responses",
             {{"200", response("Session", session_ref)}, {"404", response("Unknown", error_ref)}}}}},
          {"delete",
           {{"summary", "Delete a session"},
            {"parameters", json::array({id_param})},
            {"responses",
             {{"200", response("Deleted", {{"type", "object"}})},
              {"404", response("Unknown", error_ref)}}}}}}},
        {"/sessions/{id}/rounds",
         {{"post",
           {{"summary", "Report the absentees of the next round and receive its games"},
            {"parameters", json::array({id_param})},
            {"requestBody",
             {{"required", true},
              {"content",
               {{"application/json",
                 {{"schema",
                   {{"type", "object"},
                    {"properties",
                     {{"round", {{"type", "integer"}, {"minimum", 1}}},
                      {"absent", {{"type", "array"}, {"items", {{"type", "string"}}}}}}}}}}}}}}},
            {"responses",
             {{"200", response("Round scheduled or replayed", {{"$ref", "#/components/schemas/Round"}})},
              {"404", response("Unknown session", error_ref)},
              {"409", response("Budget used up, session finished or round already taken",
                               error_ref)},
              {"422", response("Unknown player", error_ref)}}}}}}},
        {"/sessions/{id}/timetable",
         {{"get",
           {{"summary", "Timetable export"},
            {"parameters",
             json::array({id_param,
                          {{"name", "format"},
                           {"in", "query"},
                           {"schema", {{"type", "string"}, {"enum", {"csv", "json"}}}}}})},
            {"responses",
             {{"200",
               {{"description", "Players by rounds; cells hold opponent, free or ABSENT"},
                {"content",
                 {{"text/csv", {{"schema", {{"type", "string"}}}}},
                  {"application/json", {{"schema", {{"type", "object"}}}}}}}}},
              {"404", response("Unknown", error_ref)}}}}}}}}},
      {"components",
       {{"schemas",
         {{"Error",
           {{"type", "object"}, {"properties", {{"error", {{"type", "string"}}}}}}},
          {"CreateSession",
           {{"type", "object"},
            {"properties",
             {{"graph", {{"type", "object"}}},
              {"complete", {{"type", "integer"}}},
              {"budgets", {{"oneOf", {{{"type", "integer"}}, {{"type", "object"}}}}}},
              {"mode", {{"type", "string"}, {"enum", {"online", "prefixed"}}}},
              {"engine", {{"type", "string"}, {"enum", {"greedy", "optimal-small", "painting"}}}},
              {"absences", {{"type", "object"}}}}}}},
          {"Round",
           {{"type", "object"},
            {"properties",
             {{"round", {{"type", "integer"}}},
              {"absent", {{"type", "array"}}},
              {"matches", {{"type", "array"}}},
              {"budgets", {{"type", "object"}}},
              {"finished", {{"type", "boolean"}}}}}}},
          {"Session",
           {{"type", "object"},
            {"properties",
             {{"id", {{"type", "string"}}},
              {"engine", {{"type", "string"}}},
              {"limit", {{"type", "integer"}}},
              {"players", {{"type", "array"}}},
              {"rounds", {{"type", "array"}}},
              {"finished", {{"type", "boolean"}}}}}}}}}}}};
  return reply(200, doc);
}

HttpService::HttpService(ServiceCore& core)
    : core_(core), server_(std::make_unique<httplib::Server>()) {
  auto& srv = *server_;
  srv.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                           {"Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS"},
                           {"Access-Control-Allow-Headers", "Content-Type"}});
  auto send = [](httplib::Response& res, const ServiceResponse& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
  };
  srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  srv.Get("/spec", [send](const httplib::Request&, httplib::Response& res) {
    send(res, ServiceCore::openapi());
  });
  srv.Post("/sessions", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, core_.create_session(req.body));
  });
  srv.Post(R"(/sessions/([A-Za-z0-9]+)/rounds)",
           [this, send](const httplib::Request& req, httplib::Response& res) {
             send(res, core_.post_round(req.matches[1], req.body));
           });
  srv.Get(R"(/sessions/([A-Za-z0-9]+)/timetable)",
          [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, core_.timetable(req.matches[1], req.get_param_value("format")));
          });
  srv.Get(R"(/sessions/([A-Za-z0-9]+))",
          [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, core_.get_session(req.matches[1]));
          });
  srv.Delete(R"(/sessions/([A-Za-z0-9]+))",
             [this, send](const httplib::Request& req, httplib::Response& res) {
               send(res, core_.delete_session(req.matches[1]));
             });
  srv.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        try {
          std::rethrow_exception(ep);
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        res.status = 500;
        res.set_content(json{{"error", what}}.dump(), "application/json");
      });
}

HttpService::~HttpService() = default;

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return server_->bind_to_any_port(host);
  if (!server_->bind_to_port(host, port)) throw Error("cannot bind to port " + std::to_string(port));
  return port;
}

bool HttpService::listen() { return server_->listen_after_bind(); }

void HttpService::stop() { server_->stop(); }

void HttpService::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace absence
