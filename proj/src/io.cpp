#include "absence/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "absence/errors.hpp"

namespace absence::io {

namespace {

const json& require(const json& doc, const char* key, const std::string& where) {
  if (!doc.is_object()) throw InputError(where + ": expected a JSON object");
  auto it = doc.find(key);
  if (it == doc.end()) throw InputError(where + ": missing field '" + key + "'");
  return *it;
}

std::string as_name(const json& value, const std::string& where) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw InputError(where + ": vertex identifiers must be strings or integers");
}

int as_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw InputError(where + ": expected an integer");
  return value.get<int>();
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(column) +
                     ": malformed JSON");
  }
}

json load_json_file(const std::filesystem::path& path) {
  return parse_json_text(read_text_file(path), path.string());
}

GraphDocument parse_graph(const json& doc) {
  const auto& vertices = require(doc, "vertices", "graph");
  if (!vertices.is_array()) throw InputError("graph.vertices: expected an array");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    names.push_back(as_name(vertices[i], "graph.vertices[" + std::to_string(i) + "]"));

  const auto& edges = require(doc, "edges", "graph");
  if (!edges.is_array()) throw InputError("graph.edges: expected an array");
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "graph.edges[" + std::to_string(i) + "]";
    if (!edges[i].is_array() || edges[i].size() != 2)
      throw InputError(where + ": expected a pair of vertices");
    pairs.emplace_back(as_name(edges[i][0], where), as_name(edges[i][1], where));
  }

  GraphDocument out;
  try {
    out.graph = Multigraph::build(std::move(names), pairs);
  } catch (const InputError& e) {
    throw InputError(std::string("graph: ") + e.what());
  }
  out.budgets = BudgetMap::constant(out.graph.vertex_count(), 0);
  if (auto it = doc.find("budgets"); it != doc.end()) {
    out.budgets = parse_budgets(*it, out.graph);
    out.has_budgets = true;
  }
  return out;
}

json graph_to_json(const Multigraph& g, const BudgetMap* budgets) {
  json doc;
  doc["vertices"] = g.names();
  doc["edges"] = json::array();
  for (const auto& e : g.edges()) doc["edges"].push_back(edge_to_json(g, e));
  if (budgets != nullptr) doc["budgets"] = budgets_to_json(g, *budgets);
  return doc;
}

BudgetMap parse_budgets(const json& doc, const Multigraph& g) {
  std::vector<int> values(g.vertex_count(), 0);
  if (doc.is_number_integer()) {
    int t = doc.get<int>();
    if (t < 0) throw InputError("budgets: must be nonnegative");
    return BudgetMap::constant(g.vertex_count(), t);
  }
  if (!doc.is_object()) throw InputError("budgets: expected an object or an integer");
  for (const auto& [name, value] : doc.items()) {
    auto v = g.find(name);
    if (!v) throw InputError("budgets." + name + ": unknown vertex");
    int t = as_int(value, "budgets." + name);
    if (t < 0) throw InputError("budgets." + name + ": must be nonnegative");
    values[*v] = t;
  }
  return BudgetMap(std::move(values));
}

json budgets_to_json(const Multigraph& g, const BudgetMap& t) {
  json out = json::object();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    out[g.name(static_cast<Vertex>(v))] = t.at(static_cast<Vertex>(v));
  return out;
}

AbsenceAssignment parse_absences(const json& doc, const Multigraph& g) {
  const json* body = &doc;
  if (doc.is_object() && doc.contains("absences")) body = &doc.at("absences");
  if (!body->is_object()) throw InputError("absences: expected an object");
  AbsenceAssignment c(g.vertex_count());
  for (const auto& [name, rounds] : body->items()) {
    auto v = g.find(name);
    if (!v) throw InputError("absences." + name + ": unknown vertex");
    auto add = [&](const json& r, const std::string& where) {
      int round = as_int(r, where);
      if (round < 1) throw InputError(where + ": rounds must be >= 1");
      c.add(*v, round);
    };
    if (rounds.is_array()) {
      for (std::size_t i = 0; i < rounds.size(); ++i)
        add(rounds[i], "absences." + name + "[" + std::to_string(i) + "]");
    } else {
      add(rounds, "absences." + name);
    }
  }
  return c;
}

json absences_to_json(const Multigraph& g, const AbsenceAssignment& c) {
  json out = json::object();
  for (std::size_t v = 0; v < c.size(); ++v) {
    const auto& labels = c.at(static_cast<Vertex>(v));
    if (!labels.empty()) out[g.name(static_cast<Vertex>(v))] = labels;
  }
  return out;
}

json edge_to_json(const Multigraph& g, const Edge& e) {
  return json::array({g.name(e.u), g.name(e.v)});
}

Edge parse_edge(const json& pair, const Multigraph& g, const std::string& where) {
  if (!pair.is_array() || pair.size() != 2) throw InputError(where + ": expected a vertex pair");
  auto a = g.find(as_name(pair[0], where));
  auto b = g.find(as_name(pair[1], where));
  if (!a || !b) throw InputError(where + ": unknown vertex");
  if (*a == *b) throw InputError(where + ": loop");
  return make_edge(*a, *b);
}

std::vector<Vertex> parse_vertex_list(const json& list, const Multigraph& g,
                                      const std::string& where) {
  if (!list.is_array()) throw InputError(where + ": expected an array of vertices");
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    auto v = g.find(as_name(list[i], at));
    if (!v) throw InputError(at + ": unknown vertex");
    if (std::find(out.begin(), out.end(), *v) != out.end())
      throw InputError(at + ": listed twice");
    out.push_back(*v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

json vertex_list_to_json(const Multigraph& g, const std::vector<Vertex>& vs) {
  json out = json::array();
  for (Vertex v : vs) out.push_back(g.name(v));
  return out;
}

Schedule parse_schedule(const json& doc, const Multigraph& g) {
  const auto& rounds = require(doc, "rounds", "schedule");
  if (!rounds.is_array()) throw InputError("schedule.rounds: expected an array");
  Schedule s;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    const std::string where = "schedule.rounds[" + std::to_string(r) + "]";
    Round round;
    if (rounds[r].contains("absent"))
      round.absent = parse_vertex_list(rounds[r].at("absent"), g, where + ".absent");
    if (rounds[r].contains("matches")) {
      const auto& matches = rounds[r].at("matches");
      if (!matches.is_array()) throw InputError(where + ".matches: expected an array");
      for (std::size_t i = 0; i < matches.size(); ++i)
        round.matches.push_back(
            parse_edge(matches[i], g, where + ".matches[" + std::to_string(i) + "]"));
    }
    s.rounds.push_back(std::move(round));
  }
  return s;
}

json schedule_to_json(const Multigraph& g, const Schedule& s) {
  json rounds = json::array();
  for (const auto& r : s.rounds) {
    json matches = json::array();
    for (const auto& e : r.matches) matches.push_back(edge_to_json(g, e));
    rounds.push_back({{"absent", vertex_list_to_json(g, r.absent)}, {"matches", matches}});
  }
  return {{"rounds", rounds}};
}

namespace {

// cell[v][r] for every player and round.
std::vector<std::vector<std::string>> timetable_cells(const Multigraph& g, const Schedule& s) {
  std::vector<std::vector<std::string>> cells(g.vertex_count(),
                                              std::vector<std::string>(s.rounds.size(), "free"));
  for (std::size_t r = 0; r < s.rounds.size(); ++r) {
    for (Vertex v : s.rounds[r].absent) cells.at(v)[r] = "ABSENT";
    for (const auto& e : s.rounds[r].matches) {
      cells.at(e.u)[r] = g.name(e.v);
      cells.at(e.v)[r] = g.name(e.u);
    }
  }
  return cells;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string timetable_csv(const Multigraph& g, const Schedule& s) {
  auto cells = timetable_cells(g, s);
  std::string out = "Player";
  for (std::size_t r = 0; r < s.rounds.size(); ++r) out += ",Round " + std::to_string(r + 1);
  out += "\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out += csv_field(g.name(static_cast<Vertex>(v)));
    for (const auto& cell : cells[v]) out += "," + csv_field(cell);
    out += "\n";
  }
  return out;
}

json timetable_json(const Multigraph& g, const Schedule& s) {
  auto cells = timetable_cells(g, s);
  json rows = json::array();
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    rows.push_back({{"player", g.name(static_cast<Vertex>(v))}, {"cells", cells[v]}});
  return {{"rounds", s.rounds.size()}, {"rows", rows}};
}

}  // namespace absence::io
