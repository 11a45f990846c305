#include "absence/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "absence/bipartition.hpp"
#include "absence/errors.hpp"

namespace absence {

namespace {

using Matrix = std::vector<std::vector<int>>;

Matrix multiplicities(const Multigraph& g) {
  Matrix m(g.vertex_count(), std::vector<int>(g.vertex_count(), 0));
  for (const auto& e : g.edges()) {
    ++m[e.u][e.v];
    ++m[e.v][e.u];
  }
  return m;
}

std::string encode(const Matrix& m, const std::vector<int>& perm) {
  std::string out(1, static_cast<char>(m.size()));
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      out.push_back(static_cast<char>('0' + m[perm[i]][perm[j]]));
  return out;
}

// Minimum encoding over the orders that list vertices by degree, descending.
std::pair<std::string, std::vector<int>> canonical(const Multigraph& g) {
  const auto m = multiplicities(g);
  const int n = static_cast<int>(g.vertex_count());
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::stable_sort(base.begin(), base.end(), [&](int a, int b) {
    return g.degree(static_cast<Vertex>(a)) > g.degree(static_cast<Vertex>(b));
  });
  std::vector<std::pair<int, int>> groups;  // [begin,end) of equal degree
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && g.degree(static_cast<Vertex>(base[j])) == g.degree(static_cast<Vertex>(base[i])))
      ++j;
    groups.emplace_back(i, j);
    i = j;
  }
  for (auto [b, e] : groups) std::sort(base.begin() + b, base.begin() + e);

  std::string best;
  std::vector<int> best_perm;
  std::vector<int> perm = base;
  std::function<void(std::size_t)> rec = [&](std::size_t gi) {
    if (gi == groups.size()) {
      auto code = encode(m, perm);
      if (best.empty() || code < best) {
        best = code;
        best_perm = perm;
      }
      return;
    }
    auto [b, e] = groups[gi];
    do {
      rec(gi + 1);
    } while (std::next_permutation(perm.begin() + b, perm.begin() + e));
  };
  rec(0);
  return {best, best_perm};
}

Multigraph relabeled(const Multigraph& g, const std::vector<int>& perm) {
  std::vector<int> position(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) position[perm[i]] = static_cast<int>(i);
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) edges.push_back(make_edge(position[e.u], position[e.v]));
  std::sort(edges.begin(), edges.end());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < perm.size(); ++i) names.push_back("v" + std::to_string(i + 1));
  return Multigraph::from_indices(std::move(names), std::move(edges));
}

}  // namespace

std::string canonical_form(const Multigraph& g) { return canonical(g).first; }

std::vector<Multigraph> connected_graphs(const CorpusOptions& options) {
  if (options.max_edges < 1 || options.max_edges > 12)
    throw InputError("corpus edge limit must lie in 1..12");
  std::vector<Multigraph> out;
  std::vector<Multigraph> level{Multigraph::from_indices({"v1", "v2"}, {make_edge(0, 1)})};
  for (int edges = 1; edges <= options.max_edges; ++edges) {
    out.insert(out.end(), level.begin(), level.end());
    if (edges == options.max_edges) break;
    std::set<std::string> seen;
    std::vector<Multigraph> next;
    auto offer = [&](const Multigraph& h) {
      if (options.bipartite_only && !is_bipartite(h)) return;
      auto [code, perm] = canonical(h);
      if (seen.insert(code).second) next.push_back(relabeled(h, perm));
    };
    for (const auto& g : level) {
      const auto m = multiplicities(g);
      const auto n = static_cast<Vertex>(g.vertex_count());
      for (Vertex a = 0; a < n; ++a) {
        for (Vertex b = a + 1; b < n; ++b) {
          if (m[a][b] >= options.max_multiplicity) continue;
          auto edges_plus = g.edges();
          edges_plus.push_back(make_edge(a, b));
          offer(Multigraph::from_indices(g.names(), edges_plus));
        }
        auto names = g.names();
        names.push_back("v" + std::to_string(n + 1));
        auto edges_plus = g.edges();
        edges_plus.push_back(make_edge(a, n));
        offer(Multigraph::from_indices(std::move(names), edges_plus));
      }
    }
    level = std::move(next);
  }
  return out;
}

Multigraph disjoint_union(const Multigraph& a, const Multigraph& b) {
  std::vector<std::string> names;
  const auto offset = static_cast<Vertex>(a.vertex_count());
  for (std::size_t i = 0; i < a.vertex_count() + b.vertex_count(); ++i)
    names.push_back("v" + std::to_string(i + 1));
  std::vector<Edge> edges = a.edges();
  for (const auto& e : b.edges()) edges.push_back(make_edge(e.u + offset, e.v + offset));
  return Multigraph::from_indices(std::move(names), std::move(edges));
}

}  // namespace absence
