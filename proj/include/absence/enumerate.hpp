#pragma once

// Small graph corpora for exhaustive checks.

#include <string>
#include <vector>

#include "absence/core.hpp"

namespace absence {

struct CorpusOptions {
  int max_edges = 6;
  int max_multiplicity = 1;
  bool bipartite_only = false;
};

// Connected (multi)graphs with 1..max_edges edges, one per isomorphism class,
// vertices named v1..vn.
std::vector<Multigraph> connected_graphs(const CorpusOptions& options);

// A canonical string for the isomorphism class of g.
std::string canonical_form(const Multigraph& g);

// Vertices of b follow those of a.
Multigraph disjoint_union(const Multigraph& a, const Multigraph& b);

}  // namespace absence
