#include "absence/exact.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>

#include "absence/errors.hpp"

namespace absence {

namespace {

using Mask = std::uint64_t;
constexpr int kMaxColors = 64;

class Clock {
 public:
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct NodeCounter {
  std::uint64_t nodes = 0;
  std::uint64_t budget = 0;

  void tick() {
    if (++nodes > budget)
      throw SearchBudgetExceeded("search exceeded its budget of " + std::to_string(budget) +
                                 " nodes");
  }
};

// Proper coloring of a conflict graph from per-item domains (bit i = color
// index i). Most-constrained item first with forward checking. With
// `interchangeable` set all colors are symmetric, so an item only ever opens
// the lowest unused color.
class ConflictSearch {
 public:
  ConflictSearch(std::vector<std::vector<int>> neighbors, std::vector<Mask> domains,
                 bool interchangeable, NodeCounter& counter)
      : neighbors_(std::move(neighbors)),
        domain_(std::move(domains)),
        color_(domain_.size(), -1),
        interchangeable_(interchangeable),
        counter_(counter) {}

  std::optional<std::vector<int>> solve() {
    for (Mask d : domain_)
      if (d == 0) return std::nullopt;
    if (recurse(0)) return color_;
    return std::nullopt;
  }

 private:
  Mask usable(int item) const {
    Mask d = domain_[item];
    if (interchangeable_ && opened_ < kMaxColors) d &= (Mask{1} << (opened_ + 1)) - 1;
    return d;
  }

  int pick() const {
    int best = -1;
    int best_count = kMaxColors + 1;
    int best_degree = -1;
    for (std::size_t i = 0; i < color_.size(); ++i) {
      if (color_[i] != -1) continue;
      const int count = std::popcount(usable(static_cast<int>(i)));
      int degree = 0;
      for (int j : neighbors_[i]) degree += color_[j] == -1;
      if (count < best_count || (count == best_count && degree > best_degree)) {
        best = static_cast<int>(i);
        best_count = count;
        best_degree = degree;
      }
    }
    return best;
  }

  bool recurse(std::size_t assigned) {
    if (assigned == color_.size()) return true;
    const int item = pick();
    Mask options = usable(item);
    while (options != 0) {
      const int col = std::countr_zero(options);
      options &= options - 1;
      counter_.tick();

      const Mask bit = Mask{1} << col;
      std::vector<int> touched;
      bool dead = false;
      for (int j : neighbors_[item]) {
        if (color_[j] != -1 || (domain_[j] & bit) == 0) continue;
        domain_[j] &= ~bit;
        touched.push_back(j);
        if (domain_[j] == 0) dead = true;
      }
      if (!dead) {
        color_[item] = col;
        const int saved_opened = opened_;
        opened_ = std::max(opened_, col + 1);
        if (recurse(assigned + 1)) return true;
        opened_ = saved_opened;
        color_[item] = -1;
      }
      for (int j : touched) domain_[j] |= bit;
    }
    return false;
  }

  std::vector<std::vector<int>> neighbors_;
  std::vector<Mask> domain_;
  std::vector<int> color_;
  bool interchangeable_;
  int opened_ = 0;
  NodeCounter& counter_;
};

std::vector<std::vector<int>> line_graph(const Multigraph& g) {
  std::vector<std::vector<int>> out(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const auto& inc = g.incident(static_cast<Vertex>(v));
    for (std::size_t a : inc)
      for (std::size_t b : inc)
        if (a != b) out[a].push_back(static_cast<int>(b));
  }
  for (auto& row : out) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  return out;
}

Mask full_mask(int m) {
  if (m > kMaxColors) throw InputError("more than 64 colors are not supported");
  return m == kMaxColors ? ~Mask{0} : (Mask{1} << m) - 1;
}

// Colors 1..m for every edge, all symmetric.
std::optional<std::vector<Color>> plain_coloring(const Multigraph& g, int m, NodeCounter& counter) {
  std::vector<Mask> domains(g.edge_count(), full_mask(m));
  ConflictSearch search(line_graph(g), std::move(domains), true, counter);
  auto found = search.solve();
  if (!found) return std::nullopt;
  std::vector<Color> colors;
  for (int c : *found) colors.push_back(c + 1);
  return colors;
}

// Colors 1..m avoiding c; labels above m are irrelevant.
std::optional<std::vector<Color>> avoiding_coloring(const Multigraph& g,
                                                    const std::vector<std::vector<int>>& lines,
                                                    const AbsenceAssignment& c, int m,
                                                    NodeCounter& counter) {
  std::vector<Mask> forbidden(g.vertex_count(), 0);
  for (std::size_t v = 0; v < c.size() && v < g.vertex_count(); ++v)
    for (Color label : c.at(static_cast<Vertex>(v)))
      if (label <= m) forbidden[v] |= Mask{1} << (label - 1);
  std::vector<Mask> domains;
  domains.reserve(g.edge_count());
  for (const auto& e : g.edges()) domains.push_back(full_mask(m) & ~(forbidden[e.u] | forbidden[e.v]));
  ConflictSearch search(lines, std::move(domains), false, counter);
  auto found = search.solve();
  if (!found) return std::nullopt;
  std::vector<Color> colors;
  for (int col : *found) colors.push_back(col + 1);
  return colors;
}

int greedy_cap(const Multigraph& g, const AbsenceAssignment& c) {
  std::size_t worst = 0;
  for (const auto& e : g.edges()) worst = std::max(worst, c.edge_labels(e).size());
  return static_cast<int>(g.edge_count() + worst);
}

}  // namespace

ListSystem ListSystem::avoiding(const Multigraph& g, const AbsenceAssignment& c, int m) {
  ListSystem ls;
  for (const auto& e : g.edges()) {
    auto forbidden = c.size() ? c.edge_labels(e) : std::set<Color>{};
    std::vector<Color> list;
    for (Color col = 1; col <= m; ++col)
      if (!forbidden.contains(col)) list.push_back(col);
    ls.lists.push_back(std::move(list));
  }
  return ls;
}

std::optional<std::vector<Color>> list_edge_colorable(const Multigraph& g, const ListSystem& lists,
                                                      const SearchLimits& limits,
                                                      SearchStats* stats) {
  Clock clock;
  if (lists.lists.size() != g.edge_count())
    throw InputError("list system does not give a list for every edge");
  std::set<Color> palette;
  for (const auto& list : lists.lists)
    for (Color col : list) {
      if (col < 1) throw InputError("list colors must be >= 1");
      palette.insert(col);
    }
  if (palette.size() > kMaxColors) throw InputError("more than 64 distinct list colors");
  std::vector<Color> by_index(palette.begin(), palette.end());
  auto index_of = [&](Color col) {
    return static_cast<int>(std::lower_bound(by_index.begin(), by_index.end(), col) -
                            by_index.begin());
  };
  std::vector<Mask> domains;
  for (const auto& list : lists.lists) {
    Mask d = 0;
    for (Color col : list) d |= Mask{1} << index_of(col);
    domains.push_back(d);
  }
  NodeCounter counter{0, limits.node_budget};
  ConflictSearch search(line_graph(g), std::move(domains), false, counter);
  auto found = search.solve();
  if (stats) {
    stats->nodes += counter.nodes;
    stats->elapsed_ms += clock.elapsed_ms();
  }
  if (!found) return std::nullopt;
  std::vector<Color> colors;
  for (int idx : *found) colors.push_back(by_index[idx]);
  return colors;
}

SolveResult chi_prime(const Multigraph& g, const SearchLimits& limits) {
  Clock clock;
  SolveResult r;
  r.witness = Schedule{};
  if (g.edgeless()) return r;
  NodeCounter counter{0, limits.node_budget};
  const int start = g.max_degree();
  for (int m = start;; ++m) {
    if (auto colors = plain_coloring(g, m, counter)) {
      r.value = m;
      r.coloring = std::move(*colors);
      r.certificate = m > start ? Certificate::exhausted_search : Certificate::none;
      break;
    }
  }
  r.witness = schedule_from_coloring(g, r.coloring);
  r.stats = {counter.nodes, clock.elapsed_ms()};
  return r;
}

SolveResult chi_prime_c(const Multigraph& g, const AbsenceAssignment& c,
                        const SearchLimits& limits) {
  Clock clock;
  if (c.size() != 0 && c.size() != g.vertex_count())
    throw InputError("absence assignment does not match the graph");
  SolveResult r;
  r.witness = Schedule{};
  if (g.edgeless()) return r;

  const SolveResult base = chi_prime(g, limits);
  NodeCounter counter{base.stats.nodes, limits.node_budget};
  const auto lines = line_graph(g);
  const int cap = std::max(base.value, greedy_cap(g, c));
  for (int m = base.value; m <= cap; ++m) {
    if (auto colors = avoiding_coloring(g, lines, c, m, counter)) {
      r.value = m;
      r.coloring = std::move(*colors);
      r.certificate = (m > base.value || base.certificate == Certificate::exhausted_search)
                          ? Certificate::exhausted_search
                          : Certificate::none;
      r.witness = schedule_from_coloring(g, r.coloring, c.size() ? &c : nullptr);
      r.stats = {counter.nodes, clock.elapsed_ms()};
      return r;
    }
  }
  throw InternalFault("no avoiding coloring below the greedy cap");
}

namespace {

// Enumerates t-labelings with labels in (m], one per orbit of color
// permutations at least once. Every vertex receives exactly min(t(v), m)
// labels: extra labels only shrink lists, so they never lower chi'_c.
class LabelingSearch {
 public:
  LabelingSearch(const Multigraph& g, const BudgetMap& t, int m, NodeCounter& counter)
      : g_(g), t_(t), m_(m), lines_(line_graph(g)), counter_(counter), current_(g.vertex_count()) {}

  // First labeling (in generation order) that blocks every m-coloring.
  std::optional<AbsenceAssignment> find_blocking() {
    found_.reset();
    assign(0, 0);
    return found_;
  }

  std::uint64_t examined() const { return examined_; }

 private:
  bool assign(std::size_t v, int used) {
    if (v == g_.vertex_count()) {
      ++examined_;
      if (!avoiding_coloring(g_, lines_, current_, m_, counter_)) {
        found_ = current_;
        return true;
      }
      return false;
    }
    const auto vertex = static_cast<Vertex>(v);
    const int k = g_.degree(vertex) == 0 ? 0 : std::min(t_.at(vertex), m_);
    if (k == 0) return assign(v + 1, used);
    const int lo = std::max(0, k - (m_ - used));
    const int hi = std::min(k, used);
    for (int old = hi; old >= lo; --old) {
      const int fresh = k - old;
      std::vector<Color> chosen;
      if (choose_old(vertex, used, old, fresh, 1, chosen)) return true;
    }
    return false;
  }

  // Picks `old` colors from (used] in increasing order, then opens `fresh` new ones.
  bool choose_old(Vertex v, int used, int old, int fresh, Color from, std::vector<Color>& chosen) {
    if (static_cast<int>(chosen.size()) == old) {
      std::set<Color> labels(chosen.begin(), chosen.end());
      for (int i = 1; i <= fresh; ++i) labels.insert(used + i);
      auto saved = current_;
      current_ = with_labels(v, labels);
      const bool hit = assign(v + 1, used + fresh);
      current_ = std::move(saved);
      return hit;
    }
    for (Color col = from; col <= used; ++col) {
      if (used - col + 1 < old - static_cast<int>(chosen.size())) break;
      chosen.push_back(col);
      if (choose_old(v, used, old, fresh, col + 1, chosen)) return true;
      chosen.pop_back();
    }
    return false;
  }

  AbsenceAssignment with_labels(Vertex v, const std::set<Color>& labels) const {
    AbsenceAssignment c = current_;
    for (Color col : labels) c.add(v, col);
    return c;
  }

  const Multigraph& g_;
  const BudgetMap& t_;
  int m_;
  std::vector<std::vector<int>> lines_;
  NodeCounter& counter_;
  AbsenceAssignment current_;
  std::optional<AbsenceAssignment> found_;
  std::uint64_t examined_ = 0;
};

}  // namespace

ChiTResult chi_t_exact(const Multigraph& g, const BudgetMap& t, const SearchLimits& limits) {
  Clock clock;
  if (t.size() != g.vertex_count()) throw InputError("budget map does not match the graph");
  ChiTResult out;
  out.worst = AbsenceAssignment(g.vertex_count());
  if (g.edgeless()) {
    out.result.witness = Schedule{};
    return out;
  }

  const SolveResult base = chi_prime(g, limits);
  NodeCounter counter{base.stats.nodes, limits.node_budget};
  int m = base.value;
  for (;; ++m) {
    LabelingSearch search(g, t, m, counter);
    auto blocking = search.find_blocking();
    out.labelings += search.examined();
    if (!blocking) break;
    out.worst = std::move(*blocking);
  }

  SearchLimits rest = limits;
  rest.node_budget = limits.node_budget > counter.nodes ? limits.node_budget - counter.nodes : 1;
  out.result = chi_prime_c(g, out.worst, rest);
  if (out.result.value != m)
    throw InternalFault("worst labeling does not attain the computed maximum");
  out.result.certificate = m > base.value ? Certificate::exhausted_search : base.certificate;
  out.result.stats = {counter.nodes + out.result.stats.nodes, clock.elapsed_ms()};
  return out;
}

SolveResult chi_total(const Multigraph& g, const SearchLimits& limits) {
  Clock clock;
  SolveResult r;
  const std::size_t n = g.vertex_count();
  if (n == 0) {
    r.witness = Schedule{};
    return r;
  }
  // Items 0..n-1 are vertices, n.. are edges.
  std::vector<std::vector<int>> neighbors(n + g.edge_count());
  auto link = [&](int a, int b) {
    neighbors[a].push_back(b);
    neighbors[b].push_back(a);
  };
  const auto lines = line_graph(g);
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const Edge& e = g.edge(i);
    link(e.u, e.v);
    link(e.u, static_cast<int>(n + i));
    link(e.v, static_cast<int>(n + i));
    for (int j : lines[i]) neighbors[n + i].push_back(static_cast<int>(n + j));
  }
  for (auto& row : neighbors) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }

  NodeCounter counter{0, limits.node_budget};
  const int start = g.max_degree() + 1;
  for (int m = start;; ++m) {
    std::vector<Mask> domains(neighbors.size(), full_mask(m));
    ConflictSearch search(neighbors, std::move(domains), true, counter);
    if (auto found = search.solve()) {
      r.value = m;
      AbsenceAssignment vertex_colors(n);
      for (std::size_t v = 0; v < n; ++v) vertex_colors.add(static_cast<Vertex>(v), (*found)[v] + 1);
      for (std::size_t i = 0; i < g.edge_count(); ++i) r.coloring.push_back((*found)[n + i] + 1);
      r.witness = schedule_from_coloring(g, r.coloring, &vertex_colors);
      // Vertex colors may exceed the largest edge color.
      while (static_cast<int>(r.witness->rounds.size()) < m) {
        const Color round = static_cast<Color>(r.witness->rounds.size()) + 1;
        r.witness->rounds.push_back({vertex_colors.absent_in(round), {}});
      }
      r.certificate = m > start ? Certificate::exhausted_search : Certificate::none;
      break;
    }
  }
  r.stats = {counter.nodes, clock.elapsed_ms()};
  return r;
}

}  // namespace absence
