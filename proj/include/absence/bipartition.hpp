#pragma once

#include <optional>
#include <vector>

#include "absence/core.hpp"

namespace absence {

// Blocks X (side 0) and Y (side 1); every edge crosses.
struct Bipartition {
  std::vector<int> side;

  bool in_x(Vertex v) const { return side.at(v) == 0; }
  std::vector<Vertex> block(int which) const;
  friend bool operator==(const Bipartition&, const Bipartition&) = default;
};

// Throws InputError when the blocks do not partition the vertices or an edge
// stays inside a block.
void validate_bipartition(const Multigraph& g, const Bipartition& blocks);

// 2-coloring by BFS. In each component the smallest vertex goes to X.
std::optional<Bipartition> detect_bipartition(const Multigraph& g);
bool is_bipartite(const Multigraph& g);

}  // namespace absence
