#include "absence/core.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "absence/errors.hpp"

namespace absence {

Edge make_edge(Vertex a, Vertex b) {
  if (a == b) throw InputError("loop edge at vertex index " + std::to_string(a));
  return a < b ? Edge{a, b} : Edge{b, a};
}

Multigraph Multigraph::build(std::vector<std::string> vertices,
                             const std::vector<std::pair<std::string, std::string>>& edges) {
  Multigraph g;
  g.names_ = std::move(vertices);
  std::unordered_set<std::string> seen;
  for (const auto& name : g.names_) {
    if (name.empty()) throw InputError("empty vertex name");
    if (!seen.insert(name).second) throw InputError("duplicate vertex '" + name + "'");
  }
  g.incident_.resize(g.names_.size());
  for (const auto& [a, b] : edges) {
    auto ia = g.find(a);
    auto ib = g.find(b);
    if (!ia) throw InputError("edge endpoint '" + a + "' is not a declared vertex");
    if (!ib) throw InputError("edge endpoint '" + b + "' is not a declared vertex");
    if (*ia == *ib) throw InputError("loop edge " + a + a + " is not allowed");
    g.incident_[*ia].push_back(g.edges_.size());
    g.incident_[*ib].push_back(g.edges_.size());
    g.edges_.push_back(make_edge(*ia, *ib));
  }
  return g;
}

Multigraph Multigraph::from_indices(std::vector<std::string> vertices, std::vector<Edge> edges) {
  std::vector<std::pair<std::string, std::string>> named;
  named.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.u >= vertices.size() || e.v >= vertices.size())
      throw InputError("edge endpoint index out of range");
    named.emplace_back(vertices[e.u], vertices[e.v]);
  }
  return build(std::move(vertices), named);
}

std::optional<Vertex> Multigraph::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<Vertex>(i);
  return std::nullopt;
}

Vertex Multigraph::index_of(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw InputError("unknown vertex '" + std::string(name) + "'");
}

int Multigraph::max_degree() const {
  int best = 0;
  for (const auto& inc : incident_) best = std::max(best, static_cast<int>(inc.size()));
  return best;
}

DegreeProfile Multigraph::degree_profile() const {
  DegreeProfile p;
  p.degree.reserve(incident_.size());
  for (const auto& inc : incident_) p.degree.push_back(static_cast<int>(inc.size()));
  p.max_degree = max_degree();
  return p;
}

bool Multigraph::same_edges(const Multigraph& other) const {
  auto a = edges_;
  auto b = other.edges_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

std::string Multigraph::edge_label(const Edge& e) const {
  return name(e.u) + "-" + name(e.v);
}

namespace {

std::vector<std::string> numbered(std::string_view prefix, int count) {
  std::vector<std::string> out;
  for (int i = 1; i <= count; ++i) out.push_back(std::string(prefix) + std::to_string(i));
  return out;
}

}  // namespace

Multigraph complete_graph(int n) {
  if (n < 1) throw InputError("complete graph needs n >= 1");
  std::vector<Edge> edges;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) edges.push_back(make_edge(a, b));
  return Multigraph::from_indices(numbered("", n), std::move(edges));
}

Multigraph thick_triangle(int s) {
  if (s < 1) throw InputError("thick triangle needs s >= 1");
  std::vector<Edge> edges;
  for (int k = 0; k < s; ++k) edges.push_back(make_edge(0, 1));
  for (int k = 0; k < s; ++k) edges.push_back(make_edge(0, 2));
  for (int k = 0; k < s; ++k) edges.push_back(make_edge(1, 2));
  return Multigraph::from_indices(numbered("v", 3), std::move(edges));
}

Multigraph complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw InputError("complete bipartite graph needs a, b >= 1");
  auto names = numbered("x", a);
  auto ys = numbered("y", b);
  names.insert(names.end(), ys.begin(), ys.end());
  std::vector<Edge> edges;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) edges.push_back(make_edge(i, a + j));
  return Multigraph::from_indices(std::move(names), std::move(edges));
}

Multigraph cycle_graph(int n) {
  if (n < 3) throw InputError("cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back(make_edge(i, (i + 1) % n));
  return Multigraph::from_indices(numbered("", n), std::move(edges));
}

// BudgetMap ------------------------------------------------------------------

BudgetMap::BudgetMap(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_)
    if (v < 0) throw InputError("absence budgets must be nonnegative");
}

BudgetMap BudgetMap::constant(std::size_t n, int t) { return BudgetMap(std::vector<int>(n, t)); }

std::vector<Vertex> BudgetMap::support() const {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (values_[i] > 0) out.push_back(static_cast<Vertex>(i));
  return out;
}

bool BudgetMap::is_constant() const {
  return std::adjacent_find(values_.begin(), values_.end(), std::not_equal_to<>()) ==
         values_.end();
}

int BudgetMap::max() const {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

BudgetMap BudgetMap::after_absence(std::span<const Vertex> absent) const {
  BudgetMap next = *this;
  for (Vertex v : absent) {
    if (v >= values_.size()) throw InputError("absent vertex index out of range");
    if (next.values_[v] <= 0)
      throw BudgetViolation("vertex index " + std::to_string(v) + " has no absences left");
    --next.values_[v];
  }
  return next;
}

// AbsenceAssignment ------------------------------------------------------------

AbsenceAssignment::AbsenceAssignment(std::vector<std::set<Color>> labels)
    : labels_(std::move(labels)) {
  for (const auto& set : labels_)
    for (Color c : set)
      if (c < 1) throw InputError("absence rounds must be >= 1");
}

AbsenceAssignment AbsenceAssignment::single(std::span<const int> labels) {
  AbsenceAssignment c(labels.size());
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0) throw InputError("absence rounds must be >= 1");
    if (labels[v] > 0) c.add(static_cast<Vertex>(v), labels[v]);
  }
  return c;
}

void AbsenceAssignment::add(Vertex v, Color round) {
  if (round < 1) throw InputError("absence rounds must be >= 1");
  labels_.at(v).insert(round);
}

bool AbsenceAssignment::empty() const {
  return std::all_of(labels_.begin(), labels_.end(), [](const auto& s) { return s.empty(); });
}

std::set<Color> AbsenceAssignment::edge_labels(const Edge& e) const {
  std::set<Color> out = labels_.at(e.u);
  out.insert(labels_.at(e.v).begin(), labels_.at(e.v).end());
  return out;
}

std::vector<Vertex> AbsenceAssignment::absent_in(Color round) const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (labels_[v].contains(round)) out.push_back(static_cast<Vertex>(v));
  return out;
}

Color AbsenceAssignment::max_label() const {
  Color best = 0;
  for (const auto& s : labels_)
    if (!s.empty()) best = std::max(best, *s.rbegin());
  return best;
}

bool AbsenceAssignment::is_t_labeling(const BudgetMap& t) const {
  if (t.size() != labels_.size()) return false;
  for (std::size_t v = 0; v < labels_.size(); ++v)
    if (static_cast<int>(labels_[v].size()) > t.at(static_cast<Vertex>(v))) return false;
  return true;
}

BudgetMap AbsenceAssignment::counts() const {
  std::vector<int> out;
  for (const auto& s : labels_) out.push_back(static_cast<int>(s.size()));
  return BudgetMap(std::move(out));
}

// Schedule -----------------------------------------------------------------------

std::size_t Schedule::match_count() const {
  std::size_t n = 0;
  for (const auto& r : rounds) n += r.matches.size();
  return n;
}

Schedule schedule_from_coloring(const Multigraph& g, std::span<const Color> colors,
                                const AbsenceAssignment* c) {
  if (colors.size() != g.edge_count()) throw InputError("coloring does not cover the edges");
  Color top = 0;
  for (Color col : colors) {
    if (col < 1) throw InputError("edge colors must be >= 1");
    top = std::max(top, col);
  }
  Schedule s;
  s.rounds.resize(top);
  for (std::size_t i = 0; i < colors.size(); ++i)
    s.rounds[colors[i] - 1].matches.push_back(g.edge(i));
  if (c != nullptr)
    for (Color r = 1; r <= top; ++r) s.rounds[r - 1].absent = c->absent_in(r);
  return s;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::not_an_edge: return "not_an_edge";
    case ViolationKind::overlapping_matches: return "overlapping_matches";
    case ViolationKind::absent_player: return "absent_player";
    case ViolationKind::forbidden_round: return "forbidden_round";
    case ViolationKind::duplicate_match: return "duplicate_match";
    case ViolationKind::missing_match: return "missing_match";
  }
  return "unknown";
}

std::vector<Violation> verify_schedule(const Multigraph& g, const AbsenceAssignment& c,
                                       const Schedule& s) {
  std::vector<Violation> out;
  auto label = [&](const Edge& e) {
    if (e.u < g.vertex_count() && e.v < g.vertex_count()) return g.edge_label(e);
    return std::to_string(e.u) + "-" + std::to_string(e.v);
  };

  std::map<Edge, int> remaining;
  for (const auto& e : g.edges()) ++remaining[e];

  for (std::size_t r = 0; r < s.rounds.size(); ++r) {
    const int round = static_cast<int>(r) + 1;
    const auto& rd = s.rounds[r];
    std::vector<int> busy(g.vertex_count(), 0);
    std::vector<bool> absent(g.vertex_count(), false);
    for (Vertex v : rd.absent)
      if (v < absent.size()) absent[v] = true;

    for (const auto& e : rd.matches) {
      auto it = remaining.find(e);
      if (e.u >= g.vertex_count() || e.v >= g.vertex_count() || e.u == e.v ||
          (it == remaining.end() && std::find(g.edges().begin(), g.edges().end(), e) ==
                                        g.edges().end())) {
        out.push_back({ViolationKind::not_an_edge, round, e,
                       "round " + std::to_string(round) + ": " + label(e) + " is not an edge"});
        continue;
      }
      for (Vertex x : {e.u, e.v}) {
        if (++busy[x] == 2)
          out.push_back({ViolationKind::overlapping_matches, round, e,
                         "round " + std::to_string(round) + ": " + g.name(x) +
                             " plays more than once"});
        if (absent[x])
          out.push_back({ViolationKind::absent_player, round, e,
                         "round " + std::to_string(round) + ": " + g.name(x) +
                             " is absent but scheduled in " + label(e)});
        if (c.size() > x && c.at(x).contains(round))
          out.push_back({ViolationKind::forbidden_round, round, e,
                         "round " + std::to_string(round) + ": " + label(e) +
                             " falls on a forbidden round of " + g.name(x)});
      }
      if (it == remaining.end() || it->second == 0) {
        out.push_back({ViolationKind::duplicate_match, round, e,
                       "round " + std::to_string(round) + ": " + label(e) +
                           " was already scheduled"});
      } else {
        --it->second;
      }
    }
  }
  for (const auto& [e, left] : remaining)
    for (int k = 0; k < left; ++k)
      out.push_back({ViolationKind::missing_match, 0, e, label(e) + " is never scheduled"});
  return out;
}

AbsenceAssignment absence_log_to_assignment(const Schedule& s, std::size_t vertex_count) {
  AbsenceAssignment c(vertex_count);
  for (std::size_t r = 0; r < s.rounds.size(); ++r)
    for (Vertex v : s.rounds[r].absent) c.add(v, static_cast<Color>(r) + 1);
  return c;
}

}  // namespace absence
