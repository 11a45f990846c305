#pragma once

// JSON and CSV formats.
//
//   graph:     {"vertices":[...], "edges":[["u","v"],...], "budgets":{"u":1,...}}
//   schedule:  {"rounds":[{"absent":[...],"matches":[["u","v"],...]},...]}
//   absences:  {"u":[3],"v":[3,5]}  (optionally wrapped as {"absences":{...}})
//   timetable: CSV, one row per player, one column per round; cells hold the
//              opponent, "free" or "ABSENT".

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "absence/core.hpp"

namespace absence::io {

using json = nlohmann::json;

struct GraphDocument {
  Multigraph graph;
  BudgetMap budgets;  // zero for vertices the document leaves out
  bool has_budgets = false;
};

// Reads a file and parses it as JSON; syntax errors carry line and column.
json load_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& origin = "input");

GraphDocument parse_graph(const json& doc);
json graph_to_json(const Multigraph& g, const BudgetMap* budgets = nullptr);

BudgetMap parse_budgets(const json& doc, const Multigraph& g);
json budgets_to_json(const Multigraph& g, const BudgetMap& t);

AbsenceAssignment parse_absences(const json& doc, const Multigraph& g);
json absences_to_json(const Multigraph& g, const AbsenceAssignment& c);

Schedule parse_schedule(const json& doc, const Multigraph& g);
json schedule_to_json(const Multigraph& g, const Schedule& s);

json edge_to_json(const Multigraph& g, const Edge& e);
Edge parse_edge(const json& pair, const Multigraph& g, const std::string& where);
std::vector<Vertex> parse_vertex_list(const json& list, const Multigraph& g,
                                      const std::string& where);
json vertex_list_to_json(const Multigraph& g, const std::vector<Vertex>& vs);

// Header "Player,Round 1,...,Round k" then one line per vertex, "\n" endings.
std::string timetable_csv(const Multigraph& g, const Schedule& s);
json timetable_json(const Multigraph& g, const Schedule& s);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace absence::io
