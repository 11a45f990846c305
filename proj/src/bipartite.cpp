#include "absence/bipartite.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>

#include "absence/errors.hpp"

namespace absence {

namespace {

Vertex x_end(const Bipartition& blocks, const Edge& e) { return blocks.in_x(e.u) ? e.u : e.v; }
Vertex y_end(const Bipartition& blocks, const Edge& e) { return blocks.in_x(e.u) ? e.v : e.u; }

}  // namespace

std::vector<Color> bipartite_edge_coloring(const Multigraph& b, const Bipartition& blocks) {
  validate_bipartition(b, blocks);
  const int delta = b.max_degree();
  // at[v][c] = edge colored c at v, or -1.
  std::vector<std::vector<long>> at(b.vertex_count(), std::vector<long>(delta + 1, -1));
  std::vector<Color> color(b.edge_count(), 0);
  auto free_at = [&](Vertex v) {
    for (int c = 1; c <= delta; ++c)
      if (at[v][c] < 0) return c;
    throw InternalFault("no free color at a vertex below its degree");
  };

  for (std::size_t i = 0; i < b.edge_count(); ++i) {
    const Vertex x = x_end(blocks, b.edge(i)), y = y_end(blocks, b.edge(i));
    const int a = free_at(x);
    if (at[y][a] >= 0) {
      const int c = free_at(y);
      // Swap a and c along the alternating path from y; it cannot reach x.
      std::vector<std::size_t> path;
      Vertex cur = y;
      int want = a;
      while (at[cur][want] >= 0) {
        const auto f = static_cast<std::size_t>(at[cur][want]);
        path.push_back(f);
        const Edge& ef = b.edge(f);
        cur = ef.u == cur ? ef.v : ef.u;
        want = want == a ? c : a;
      }
      for (std::size_t f : path) {
        at[b.edge(f).u][color[f]] = -1;
        at[b.edge(f).v][color[f]] = -1;
      }
      for (std::size_t f : path) {
        color[f] = color[f] == a ? c : a;
        at[b.edge(f).u][color[f]] = static_cast<long>(f);
        at[b.edge(f).v][color[f]] = static_cast<long>(f);
      }
    }
    color[i] = a;
    at[x][a] = at[y][a] = static_cast<long>(i);
  }
  return color;
}

LineOrientation LineOrientation::galvin(const Multigraph& b, const Bipartition& blocks,
                                        std::span<const Color> phi) {
  LineOrientation o;
  o.blocks = blocks;
  o.rank_x.assign(b.edge_count(), 0);
  o.rank_y.assign(b.edge_count(), 0);
  for (std::size_t v = 0; v < b.vertex_count(); ++v) {
    const bool x_side = blocks.in_x(static_cast<Vertex>(v));
    for (std::size_t e : b.incident(static_cast<Vertex>(v)))
      for (std::size_t f : b.incident(static_cast<Vertex>(v))) {
        if (x_side && phi[f] > phi[e]) ++o.rank_x[e];
        if (!x_side && phi[f] < phi[e]) ++o.rank_y[e];
      }
  }
  return o;
}

bool LineOrientation::beats(const Multigraph& b, std::size_t f, std::size_t e) const {
  const Edge& ef = b.edge(f);
  const Edge& ee = b.edge(e);
  if (x_end(blocks, ef) == x_end(blocks, ee) && rank_x[f] < rank_x[e]) return true;
  if (y_end(blocks, ef) == y_end(blocks, ee) && rank_y[f] < rank_y[e]) return true;
  return false;
}

namespace {

// Ranks at one side from a color order, then earliest-deadline-first at the
// other side. `first_x` picks which side follows the colors.
std::optional<LineOrientation> try_orientation(const Multigraph& b, const Bipartition& blocks,
                                               std::span<const int> caps,
                                               const std::vector<int>& key, bool first_x) {
  LineOrientation o;
  o.blocks = blocks;
  o.rank_x.assign(b.edge_count(), 0);
  o.rank_y.assign(b.edge_count(), 0);
  auto& first = first_x ? o.rank_x : o.rank_y;
  auto& second = first_x ? o.rank_y : o.rank_x;

  for (std::size_t v = 0; v < b.vertex_count(); ++v) {
    std::vector<std::size_t> edges = b.incident(static_cast<Vertex>(v));
    if (blocks.in_x(static_cast<Vertex>(v)) == first_x) {
      std::sort(edges.begin(), edges.end(), [&](std::size_t e, std::size_t f) {
        return std::pair(-key[e], e) < std::pair(-key[f], f);
      });
      for (std::size_t p = 0; p < edges.size(); ++p) first[edges[p]] = static_cast<int>(p);
    }
  }
  for (std::size_t v = 0; v < b.vertex_count(); ++v) {
    if (blocks.in_x(static_cast<Vertex>(v)) == first_x) continue;
    std::vector<std::pair<int, std::size_t>> jobs;
    for (std::size_t e : b.incident(static_cast<Vertex>(v)))
      jobs.emplace_back(caps[e] - first[e], e);
    std::sort(jobs.begin(), jobs.end());
    for (std::size_t p = 0; p < jobs.size(); ++p) {
      if (jobs[p].first < static_cast<int>(p)) return std::nullopt;
      second[jobs[p].second] = static_cast<int>(p);
    }
  }
  return o;
}

}  // namespace

std::optional<LineOrientation> orientation_within(const Multigraph& b, const Bipartition& blocks,
                                                  std::span<const int> caps) {
  if (caps.size() != b.edge_count()) throw InputError("one cap per edge is required");
  if (b.edgeless()) return LineOrientation{blocks, {}, {}};
  const auto phi = bipartite_edge_coloring(b, blocks);
  const int delta = b.max_degree();

  std::vector<int> perm(delta);
  std::iota(perm.begin(), perm.end(), 0);
  auto attempt = [&]() -> std::optional<LineOrientation> {
    std::vector<int> key(b.edge_count());
    for (std::size_t e = 0; e < key.size(); ++e) key[e] = perm[phi[e] - 1];
    for (bool first_x : {true, false})
      if (auto o = try_orientation(b, blocks, caps, key, first_x)) return o;
    return std::nullopt;
  };

  if (delta <= 6) {
    do {
      if (auto o = attempt()) return o;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
  }
  if (auto o = attempt()) return o;
  std::mt19937 rng(1);
  for (int trial = 0; trial < 500; ++trial) {
    std::shuffle(perm.begin(), perm.end(), rng);
    if (auto o = attempt()) return o;
  }
  return std::nullopt;
}

std::vector<std::size_t> kernel(const Multigraph& b, const LineOrientation& orientation,
                                std::span<const std::size_t> active) {
  const auto& blocks = orientation.blocks;
  std::vector<std::vector<std::size_t>> proposals(b.vertex_count());
  for (std::size_t e : active) proposals[x_end(blocks, b.edge(e))].push_back(e);
  for (auto& list : proposals)
    std::sort(list.begin(), list.end(), [&](std::size_t e, std::size_t f) {
      return orientation.rank_x[e] < orientation.rank_x[f];
    });

  std::vector<std::size_t> next(b.vertex_count(), 0);
  std::vector<long> held(b.vertex_count(), -1);  // at Y vertices
  std::deque<Vertex> queue;
  for (std::size_t v = 0; v < b.vertex_count(); ++v)
    if (!proposals[v].empty()) queue.push_back(static_cast<Vertex>(v));

  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (next[x] >= proposals[x].size()) continue;
    const std::size_t e = proposals[x][next[x]++];
    const Vertex y = y_end(blocks, b.edge(e));
    if (held[y] < 0) {
      held[y] = static_cast<long>(e);
    } else if (orientation.rank_y[e] < orientation.rank_y[held[y]]) {
      queue.push_back(x_end(blocks, b.edge(static_cast<std::size_t>(held[y]))));
      held[y] = static_cast<long>(e);
    } else {
      queue.push_back(x);
    }
  }

  std::vector<std::size_t> out;
  for (long e : held)
    if (e >= 0) out.push_back(static_cast<std::size_t>(e));
  std::sort(out.begin(), out.end());
  return out;
}

bool is_kernel(const Multigraph& b, const LineOrientation& orientation,
               std::span<const std::size_t> active, std::span<const std::size_t> candidate) {
  std::vector<bool> in_active(b.edge_count(), false), in_kernel(b.edge_count(), false);
  for (std::size_t e : active) in_active[e] = true;
  for (std::size_t e : candidate) {
    if (!in_active[e] || in_kernel[e]) return false;
    in_kernel[e] = true;
  }
  for (std::size_t i = 0; i < candidate.size(); ++i)
    for (std::size_t j = i + 1; j < candidate.size(); ++j)
      if (b.edge(candidate[i]).adjacent(b.edge(candidate[j]))) return false;
  for (std::size_t e : active) {
    if (in_kernel[e]) continue;
    bool absorbed = false;
    for (std::size_t f : candidate)
      if (b.edge(f).adjacent(b.edge(e)) && orientation.beats(b, f, e)) absorbed = true;
    if (!absorbed) return false;
  }
  return true;
}

GalvinColoring galvin_list_color(const Multigraph& b, const Bipartition& blocks,
                                 const ListSystem& lists) {
  validate_bipartition(b, blocks);
  if (lists.lists.size() != b.edge_count()) throw InputError("one list per edge is required");
  std::vector<std::vector<Color>> sorted(b.edge_count());
  std::vector<int> caps(b.edge_count());
  for (std::size_t e = 0; e < b.edge_count(); ++e) {
    sorted[e] = lists.lists[e];
    std::sort(sorted[e].begin(), sorted[e].end());
    sorted[e].erase(std::unique(sorted[e].begin(), sorted[e].end()), sorted[e].end());
    const Edge& ed = b.edge(e);
    const int need = std::max(b.degree(ed.u), b.degree(ed.v));
    if (static_cast<int>(sorted[e].size()) < need)
      throw InputError("list of " + b.edge_label(ed) + " has " + std::to_string(sorted[e].size()) +
                       " colors, needs " + std::to_string(need));
    caps[e] = static_cast<int>(sorted[e].size()) - 1;
  }

  GalvinColoring out;
  out.coloring.assign(b.edge_count(), 0);
  if (auto orientation = orientation_within(b, blocks, caps)) {
    std::vector<Color> palette;
    for (const auto& l : sorted) palette.insert(palette.end(), l.begin(), l.end());
    std::sort(palette.begin(), palette.end());
    palette.erase(std::unique(palette.begin(), palette.end()), palette.end());
    for (Color col : palette) {
      std::vector<std::size_t> active;
      for (std::size_t e = 0; e < b.edge_count(); ++e)
        if (out.coloring[e] == 0 && std::binary_search(sorted[e].begin(), sorted[e].end(), col))
          active.push_back(e);
      for (std::size_t e : kernel(b, *orientation, active)) out.coloring[e] = col;
    }
    if (std::none_of(out.coloring.begin(), out.coloring.end(), [](Color c) { return c == 0; }))
      return out;
    out.coloring.assign(b.edge_count(), 0);
  }

  auto exact = list_edge_colorable(b, ListSystem{sorted});
  if (!exact) throw InternalFault("bipartite list coloring failed with long enough lists");
  out.coloring = *exact;
  out.via_kernels = false;
  return out;
}

PaintingState PaintingState::fresh(const Multigraph& b) {
  return PaintingState{std::vector<bool>(b.edge_count(), true),
                       std::vector<int>(b.edge_count(), 0)};
}

std::vector<std::size_t> painting_round(const Multigraph& b, const LineOrientation& orientation,
                                        PaintingState& state, std::span<const Vertex> absent) {
  std::vector<bool> away(b.vertex_count(), false);
  for (Vertex v : absent) away.at(v) = true;
  std::vector<std::size_t> available;
  for (std::size_t e = 0; e < b.edge_count(); ++e)
    if (state.pending[e] && !away[b.edge(e).u] && !away[b.edge(e).v]) available.push_back(e);
  auto chosen = kernel(b, orientation, available);
  for (std::size_t e : chosen) state.pending[e] = false;
  for (std::size_t e = 0; e < b.edge_count(); ++e)
    if (state.pending[e]) ++state.deficiency[e];
  return chosen;
}

}  // namespace absence
