#pragma once

// Graphs, absence labelings, budgets and schedules.
//
// Vertices are indices into the declaration order of a Multigraph; names are
// kept only for I/O. Rounds (colors) are 1-based positive integers.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace absence {

using Vertex = std::uint32_t;
using Color = int;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
  bool touches(Vertex x) const { return u == x || v == x; }
  bool adjacent(const Edge& o) const { return touches(o.u) || touches(o.v); }
};

// Normalizes the endpoint order so that u < v. Loops are not edges.
Edge make_edge(Vertex a, Vertex b);

struct DegreeProfile {
  std::vector<int> degree;
  int max_degree = 0;
};

class Multigraph {
 public:
  Multigraph() = default;

  // Validates names (unique, non-empty), endpoints (declared) and loops.
  static Multigraph build(std::vector<std::string> vertices,
                          const std::vector<std::pair<std::string, std::string>>& edges);
  static Multigraph from_indices(std::vector<std::string> vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const { return names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool edgeless() const { return edges_.empty(); }

  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Vertex v) const { return names_.at(v); }
  std::optional<Vertex> find(std::string_view name) const;
  Vertex index_of(std::string_view name) const;

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }
  // Indices of the edges incident to v, ascending.
  const std::vector<std::size_t>& incident(Vertex v) const { return incident_.at(v); }

  int degree(Vertex v) const { return static_cast<int>(incident_.at(v).size()); }
  int max_degree() const;
  DegreeProfile degree_profile() const;

  // Edge multiset equality, independent of order.
  bool same_edges(const Multigraph& other) const;
  std::string edge_label(const Edge& e) const;

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
};

Multigraph complete_graph(int n);
// s parallel edges between every pair of three vertices.
Multigraph thick_triangle(int s);
Multigraph complete_bipartite(int a, int b);
Multigraph cycle_graph(int n);

// Allowed absence count per vertex.
class BudgetMap {
 public:
  BudgetMap() = default;
  explicit BudgetMap(std::vector<int> values);
  static BudgetMap constant(std::size_t n, int t);

  std::size_t size() const { return values_.size(); }
  int at(Vertex v) const { return values_.at(v); }
  const std::vector<int>& values() const { return values_; }
  std::vector<Vertex> support() const;
  bool is_constant() const;
  int max() const;

  // t - 1_U. Throws BudgetViolation when some v in U has nothing left.
  BudgetMap after_absence(std::span<const Vertex> absent) const;

  friend bool operator==(const BudgetMap&, const BudgetMap&) = default;

 private:
  std::vector<int> values_;
};

// Forbidden rounds per vertex (a multi-labeling).
class AbsenceAssignment {
 public:
  AbsenceAssignment() = default;
  explicit AbsenceAssignment(std::size_t n) : labels_(n) {}
  explicit AbsenceAssignment(std::vector<std::set<Color>> labels);
  // One label per vertex; 0 means no label.
  static AbsenceAssignment single(std::span<const int> labels);

  std::size_t size() const { return labels_.size(); }
  const std::set<Color>& at(Vertex v) const { return labels_.at(v); }
  void add(Vertex v, Color round);
  bool empty() const;

  // Union of the endpoint labels.
  std::set<Color> edge_labels(const Edge& e) const;
  // Players that do not show up in the given round.
  std::vector<Vertex> absent_in(Color round) const;
  Color max_label() const;
  bool is_t_labeling(const BudgetMap& t) const;
  BudgetMap counts() const;

  friend bool operator==(const AbsenceAssignment&, const AbsenceAssignment&) = default;

 private:
  std::vector<std::set<Color>> labels_;
};

struct Round {
  std::vector<Vertex> absent;
  std::vector<Edge> matches;
};

struct Schedule {
  std::vector<Round> rounds;

  std::size_t round_count() const { return rounds.size(); }
  std::size_t match_count() const;
};

// Builds a schedule whose round i holds the edges colored i. Absentees come
// from c when given. The schedule is as long as the largest color used.
Schedule schedule_from_coloring(const Multigraph& g, std::span<const Color> colors,
                                const AbsenceAssignment* c = nullptr);

enum class ViolationKind {
  not_an_edge,
  overlapping_matches,
  absent_player,
  forbidden_round,
  duplicate_match,
  missing_match,
};

struct Violation {
  ViolationKind kind;
  int round = 0;  // 0 when not tied to a round
  Edge edge;
  std::string message;
};

std::string_view to_string(ViolationKind kind);

// Empty result means the schedule is a proper, c-avoiding, complete schedule
// of g that also respects the absentees recorded in each round.
std::vector<Violation> verify_schedule(const Multigraph& g, const AbsenceAssignment& c,
                                       const Schedule& s);

// c(v) = { i : v in U_i }.
AbsenceAssignment absence_log_to_assignment(const Schedule& s, std::size_t vertex_count);

}  // namespace absence
