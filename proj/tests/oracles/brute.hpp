#pragma once

// Test-only reference computations. Plain enumeration with no pruning, kept
// independent of the library's search code so they can check it.

#include <algorithm>
#include <bit>
#include <functional>
#include <tuple>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "absence/core.hpp"

namespace absence::oracle {

// Every assignment in the product of the lists, checked for properness.
inline std::optional<std::vector<Color>> brute_list_coloring(
    const Multigraph& g, const std::vector<std::vector<Color>>& lists) {
  std::vector<Color> pick(g.edge_count());
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == g.edge_count()) {
      for (std::size_t a = 0; a < i; ++a)
        for (std::size_t b = a + 1; b < i; ++b)
          if (pick[a] == pick[b] && g.edge(a).adjacent(g.edge(b))) return false;
      return true;
    }
    for (Color col : lists[i]) {
      pick[i] = col;
      if (go(i + 1)) return true;
    }
    return false;
  };
  if (go(0)) return pick;
  return std::nullopt;
}

inline std::vector<std::vector<Color>> avoiding_lists(const Multigraph& g,
                                                      const AbsenceAssignment& c, int m) {
  std::vector<std::vector<Color>> lists;
  for (const auto& e : g.edges()) {
    std::vector<Color> list;
    for (Color col = 1; col <= m; ++col)
      if (!c.at(e.u).contains(col) && !c.at(e.v).contains(col)) list.push_back(col);
    lists.push_back(list);
  }
  return lists;
}

inline int brute_chi_c(const Multigraph& g, const AbsenceAssignment& c) {
  if (g.edgeless()) return 0;
  for (int m = 1;; ++m)
    if (brute_list_coloring(g, avoiding_lists(g, c, m))) return m;
}

inline int brute_chi_prime(const Multigraph& g) {
  return brute_chi_c(g, AbsenceAssignment(g.vertex_count()));
}

// All labelings with |c(v)| <= t(v) and labels in (max_label].
inline int brute_chi_t(const Multigraph& g, const BudgetMap& t, int max_label) {
  std::vector<std::vector<std::set<Color>>> options(g.vertex_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const int k = t.at(static_cast<Vertex>(v));
    for (unsigned mask = 0; mask < (1u << max_label); ++mask) {
      if (std::popcount(mask) > k) continue;
      std::set<Color> s;
      for (int b = 0; b < max_label; ++b)
        if (mask & (1u << b)) s.insert(b + 1);
      options[v].push_back(s);
    }
  }
  int best = 0;
  std::vector<std::set<Color>> cur(g.vertex_count());
  std::function<void(std::size_t)> go = [&](std::size_t v) {
    if (v == g.vertex_count()) {
      best = std::max(best, brute_chi_c(g, AbsenceAssignment(cur)));
      return;
    }
    for (const auto& s : options[v]) {
      cur[v] = s;
      go(v + 1);
    }
  };
  go(0);
  return best;
}

// Vertex colors and edge colors from (m], all pairs checked.
inline int brute_chi_total(const Multigraph& g) {
  const std::size_t n = g.vertex_count();
  const std::size_t items = n + g.edge_count();
  for (int m = 1;; ++m) {
    std::vector<int> col(items, 0);
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
      if (i == items) return true;
      for (int c = 1; c <= m; ++c) {
        col[i] = c;
        bool ok = true;
        for (std::size_t j = 0; j < i && ok; ++j) {
          if (col[j] != c) continue;
          if (i < n) continue;  // vertex i only conflicts with earlier vertices below
          const Edge& ei = g.edge(i - n);
          if (j < n) {
            ok = !ei.touches(static_cast<Vertex>(j));
          } else {
            ok = !ei.adjacent(g.edge(j - n));
          }
        }
        if (ok && i < n)
          for (const auto& e : g.edges())
            if (e.touches(static_cast<Vertex>(i))) {
              Vertex w = e.u == i ? e.v : e.u;
              if (w < i && col[w] == c) ok = false;
            }
        if (ok && go(i + 1)) return true;
      }
      return false;
    };
    if (go(0)) return m;
  }
}

// The recursive on-line definition taken literally: Indisposer may pick any
// U within supp(t) (isolated players included), Organizer any independent F
// avoiding U, empty F allowed.
class BruteGame {
 public:
  explicit BruteGame(const Multigraph& g) : g_(g) {}

  bool wins(std::vector<int> remaining_counts, std::vector<int> budgets, int m) {
    bool empty = true;
    for (int k : remaining_counts) empty = empty && k == 0;
    if (empty) return true;
    if (m == 0) return false;
    auto key = std::make_tuple(remaining_counts, budgets, m);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    std::vector<Vertex> supp;
    for (std::size_t v = 0; v < budgets.size(); ++v)
      if (budgets[v] > 0) supp.push_back(static_cast<Vertex>(v));
    bool result = true;
    for (unsigned mask = 0; mask < (1u << supp.size()) && result; ++mask) {
      std::vector<bool> absent(g_.vertex_count(), false);
      auto next_budget = budgets;
      for (std::size_t i = 0; i < supp.size(); ++i)
        if (mask & (1u << i)) {
          absent[supp[i]] = true;
          --next_budget[supp[i]];
        }
      // Independent subsets of remaining edges (one copy per distinct edge index).
      bool answer = false;
      std::vector<bool> busy(g_.vertex_count(), false);
      std::function<void(std::size_t, std::vector<int>&)> pick = [&](std::size_t i,
                                                                     std::vector<int>& rem) {
        if (answer) return;
        if (i == rem.size()) {
          answer = wins(rem, next_budget, m - 1);
          return;
        }
        pick(i + 1, rem);
        const Edge& e = distinct_[i];
        if (rem[i] > 0 && !absent[e.u] && !absent[e.v] && !busy[e.u] && !busy[e.v]) {
          busy[e.u] = busy[e.v] = true;
          --rem[i];
          pick(i + 1, rem);
          ++rem[i];
          busy[e.u] = busy[e.v] = false;
        }
      };
      auto rem = remaining_counts;
      pick(0, rem);
      result = answer;
    }
    memo_[key] = result;
    return result;
  }

  bool wins_from_start(const BudgetMap& t, int m) {
    distinct_.clear();
    std::vector<int> counts;
    for (const auto& e : g_.edges()) {
      auto it = std::find(distinct_.begin(), distinct_.end(), e);
      if (it == distinct_.end()) {
        distinct_.push_back(e);
        counts.push_back(1);
      } else {
        ++counts[it - distinct_.begin()];
      }
    }
    return wins(counts, t.values(), m);
  }

  int chi_ol(const BudgetMap& t) {
    if (g_.edgeless()) return 0;
    for (int m = 1;; ++m)
      if (wins_from_start(t, m)) return m;
  }

 private:
  const Multigraph& g_;
  std::vector<Edge> distinct_;
  std::map<std::tuple<std::vector<int>, std::vector<int>, int>, bool> memo_;
};

}  // namespace absence::oracle
