#pragma once

// Bipartite machinery: König edge coloring, preference orders on the line
// graph, stable-matching kernels, kernel-based list coloring and the
// round-by-round painting rule.

#include <optional>
#include <span>
#include <vector>

#include "absence/bipartition.hpp"
#include "absence/core.hpp"
#include "absence/exact.hpp"

namespace absence {

// Proper coloring with colors 1..Delta. Throws InputError on a bad bipartition.
std::vector<Color> bipartite_edge_coloring(const Multigraph& b, const Bipartition& blocks);

// A total order of the edges at every vertex. rank_x[e] is the number of
// edges at e's X endpoint that beat e there; rank_y likewise at Y.
struct LineOrientation {
  Bipartition blocks;
  std::vector<int> rank_x;
  std::vector<int> rank_y;

  // At X the larger phi wins, at Y the smaller.
  static LineOrientation galvin(const Multigraph& b, const Bipartition& blocks,
                                std::span<const Color> phi);

  // f beats e at a shared endpoint.
  bool beats(const Multigraph& b, std::size_t f, std::size_t e) const;
  int out_degree(std::size_t e) const { return rank_x[e] + rank_y[e]; }
};

// Orders whose out-degrees stay within caps[e], found from a König coloring by
// ranking one side by color and the other by deadlines. nullopt if the search
// gives up.
std::optional<LineOrientation> orientation_within(const Multigraph& b, const Bipartition& blocks,
                                                  std::span<const int> caps);

// Stable matching of the active edges with X proposing: independent, and
// every other active edge is beaten by an adjacent kernel edge.
std::vector<std::size_t> kernel(const Multigraph& b, const LineOrientation& orientation,
                                std::span<const std::size_t> active);
bool is_kernel(const Multigraph& b, const LineOrientation& orientation,
               std::span<const std::size_t> active, std::span<const std::size_t> candidate);

struct GalvinColoring {
  std::vector<Color> coloring;
  // False when no suitable orientation was found and exact search was used.
  bool via_kernels = true;
};

// Needs |L_e| >= max(d(u),d(v)) for every edge; throws InputError otherwise.
GalvinColoring galvin_list_color(const Multigraph& b, const Bipartition& blocks,
                                 const ListSystem& lists);

struct PaintingState {
  std::vector<bool> pending;
  // Rounds each edge waited while pending; diagnostic only.
  std::vector<int> deficiency;

  static PaintingState fresh(const Multigraph& b);
};

// Schedules the kernel of the pending edges whose players are both present.
std::vector<std::size_t> painting_round(const Multigraph& b, const LineOrientation& orientation,
                                        PaintingState& state, std::span<const Vertex> absent);

}  // namespace absence
