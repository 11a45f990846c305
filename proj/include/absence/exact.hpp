#pragma once

// Exact backtracking solvers. These are the brute-force reference for every
// formula and construction elsewhere in the library, so they only prune in
// ways that cannot change the answer.

#include <cstdint>
#include <optional>
#include <vector>

#include "absence/core.hpp"

namespace absence {

struct SearchLimits {
  // Cap on search nodes for one call; exceeding it raises SearchBudgetExceeded.
  std::uint64_t node_budget = 200'000'000;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

// Allowed colors per edge, indexed like Multigraph::edges().
struct ListSystem {
  std::vector<std::vector<Color>> lists;

  // L_e = (m] \ c(e)
  static ListSystem avoiding(const Multigraph& g, const AbsenceAssignment& c, int m);
};

enum class Certificate {
  none,              // value is a trivial lower bound, nothing to certify
  exhausted_search,  // value - 1 was refuted by complete search
};

struct SolveResult {
  int value = 0;
  // Edge colors, indexed like Multigraph::edges().
  std::vector<Color> coloring;
  std::optional<Schedule> witness;
  Certificate certificate = Certificate::none;
  SearchStats stats;
};

// A proper coloring with c'(e) in L_e, or nullopt after exhausting the search.
// Throws InputError when a list is missing.
std::optional<std::vector<Color>> list_edge_colorable(const Multigraph& g, const ListSystem& lists,
                                                      const SearchLimits& limits = {},
                                                      SearchStats* stats = nullptr);

// Chromatic index.
SolveResult chi_prime(const Multigraph& g, const SearchLimits& limits = {});

// Fewest rounds for a proper coloring avoiding the fixed absences c.
SolveResult chi_prime_c(const Multigraph& g, const AbsenceAssignment& c,
                        const SearchLimits& limits = {});

struct ChiTResult {
  SolveResult result;           // witness schedules the worst labeling
  AbsenceAssignment worst;      // a t-labeling attaining the maximum
  std::uint64_t labelings = 0;  // canonical labelings examined
};

// Worst case of chi_prime_c over all t-labelings.
ChiTResult chi_t_exact(const Multigraph& g, const BudgetMap& t, const SearchLimits& limits = {});

// Total chromatic number. The witness records vertex colors as absences.
SolveResult chi_total(const Multigraph& g, const SearchLimits& limits = {});

}  // namespace absence
