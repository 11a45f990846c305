#pragma once

// Closed-form lower and upper bounds on the number of rounds.
//
// Every bound throws VacuousBound for edgeless graphs; solvers return 0 there.

#include <map>
#include <optional>
#include <string>

#include "absence/bipartition.hpp"
#include "absence/core.hpp"

namespace absence {

// Delta(g) + min over edges uv of t(u)+t(v).
int lb_prefixed(const Multigraph& g, const BudgetMap& t);

// chi'(g) + min over edges uv of t(u)+t(v). chi'(g) is supplied by the caller.
int lb_online(const Multigraph& g, const BudgetMap& t, int chi_prime);

// max over edges uv of max(d(u),d(v)) + floor(min(d(u),d(v))/2) + t(u) + t(v).
int ub_shannon(const Multigraph& g, const BudgetMap& t);

// max over edges uv of max(d(u),d(v)) + t(u) + t(v); blocks must be valid.
int ub_bipartite(const Multigraph& g, const Bipartition& blocks, const BudgetMap& t);

struct BoundReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  int max_degree = 0;
  bool bipartite = false;
  bool constant_budget = false;
  std::map<std::string, int> lower;
  std::map<std::string, int> upper;
  // Values the open conjectures predict; not bounds.
  std::map<std::string, int> conjectured;
  // chi^1 >= chi_T applies when every budget is at least 1.
  bool total_coloring_relation = false;
};

// chi_prime enables the bounds that need the chromatic index.
BoundReport bound_report(const Multigraph& g, const BudgetMap& t,
                         std::optional<int> chi_prime = std::nullopt);

}  // namespace absence
