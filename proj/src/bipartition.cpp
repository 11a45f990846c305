#include "absence/bipartition.hpp"

#include <deque>

#include "absence/errors.hpp"

namespace absence {

std::vector<Vertex> Bipartition::block(int which) const {
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < side.size(); ++v)
    if (side[v] == which) out.push_back(static_cast<Vertex>(v));
  return out;
}

void validate_bipartition(const Multigraph& g, const Bipartition& blocks) {
  if (blocks.side.size() != g.vertex_count())
    throw InputError("bipartition does not cover every vertex exactly once");
  for (int s : blocks.side)
    if (s != 0 && s != 1) throw InputError("bipartition sides must be 0 or 1");
  for (const auto& e : g.edges())
    if (blocks.side[e.u] == blocks.side[e.v])
      throw InputError("edge " + g.edge_label(e) + " lies inside one block");
}

std::optional<Bipartition> detect_bipartition(const Multigraph& g) {
  Bipartition b;
  b.side.assign(g.vertex_count(), -1);
  for (std::size_t start = 0; start < g.vertex_count(); ++start) {
    if (b.side[start] != -1) continue;
    b.side[start] = 0;
    std::deque<Vertex> queue{static_cast<Vertex>(start)};
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (std::size_t ei : g.incident(x)) {
        const Edge& e = g.edge(ei);
        Vertex y = e.u == x ? e.v : e.u;
        if (b.side[y] == -1) {
          b.side[y] = 1 - b.side[x];
          queue.push_back(y);
        } else if (b.side[y] == b.side[x]) {
          return std::nullopt;
        }
      }
    }
  }
  return b;
}

bool is_bipartite(const Multigraph& g) { return detect_bipartition(g).has_value(); }

}  // namespace absence
