#include "absence/bounds.hpp"

#include <algorithm>
#include <limits>

#include "absence/errors.hpp"

namespace absence {

namespace {

void require_edges(const Multigraph& g, const BudgetMap& t) {
  if (g.edgeless()) throw VacuousBound("bounds do not apply to edgeless graphs");
  if (t.size() != g.vertex_count()) throw InputError("budget map does not match the graph");
}

int min_edge_budget(const Multigraph& g, const BudgetMap& t) {
  int best = std::numeric_limits<int>::max();
  for (const auto& e : g.edges()) best = std::min(best, t.at(e.u) + t.at(e.v));
  return best;
}

}  // namespace

int lb_prefixed(const Multigraph& g, const BudgetMap& t) {
  require_edges(g, t);
  return g.max_degree() + min_edge_budget(g, t);
}

int lb_online(const Multigraph& g, const BudgetMap& t, int chi_prime) {
  require_edges(g, t);
  return chi_prime + min_edge_budget(g, t);
}

int ub_shannon(const Multigraph& g, const BudgetMap& t) {
  require_edges(g, t);
  int best = 0;
  for (const auto& e : g.edges()) {
    const int du = g.degree(e.u);
    const int dv = g.degree(e.v);
    best = std::max(best, std::max(du, dv) + std::min(du, dv) / 2 + t.at(e.u) + t.at(e.v));
  }
  return best;
}

int ub_bipartite(const Multigraph& g, const Bipartition& blocks, const BudgetMap& t) {
  require_edges(g, t);
  validate_bipartition(g, blocks);
  int best = 0;
  for (const auto& e : g.edges())
    best = std::max(best, std::max(g.degree(e.u), g.degree(e.v)) + t.at(e.u) + t.at(e.v));
  return best;
}

BoundReport bound_report(const Multigraph& g, const BudgetMap& t, std::optional<int> chi_prime) {
  require_edges(g, t);
  BoundReport r;
  r.vertices = g.vertex_count();
  r.edges = g.edge_count();
  r.max_degree = g.max_degree();
  r.constant_budget = t.is_constant();

  const int tmin = *std::min_element(t.values().begin(), t.values().end());
  r.lower["max_degree"] = r.max_degree;
  r.lower["prefixed"] = lb_prefixed(g, t);
  if (chi_prime) {
    // c(v) = (t_min] for every v rules out the first t_min rounds entirely.
    r.lower["chromatic_index_plus_t"] = *chi_prime + tmin;
    r.lower["online"] = lb_online(g, t, *chi_prime);
  }
  r.total_coloring_relation = tmin >= 1;

  r.upper["shannon"] = ub_shannon(g, t);
  if (auto blocks = detect_bipartition(g)) {
    r.bipartite = true;
    r.upper["bipartite"] = ub_bipartite(g, *blocks, t);
  }

  if (r.constant_budget) {
    const int tc = t.values().front();
    r.conjectured["prefixed"] = r.max_degree + 2 * tc;
    if (chi_prime) r.conjectured["online"] = *chi_prime + 2 * tc;
  }
  return r;
}

}  // namespace absence
