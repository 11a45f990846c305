#pragma once

// The Organizer/Indisposer game. Each round Indisposer names absentees U
// within the remaining budgets, then Organizer schedules a matching that
// avoids U. Organizer wins with m rounds if every edge gets scheduled.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "absence/core.hpp"
#include "absence/exact.hpp"

namespace absence {

// Parallel edges are merged: remaining[i] counts the unscheduled copies of
// distinct edge i.
struct GameState {
  std::vector<int> remaining;
  std::vector<int> budgets;
  int rounds_left = 0;

  bool done() const;
  friend bool operator==(const GameState&, const GameState&) = default;
};

struct OnlineOptions {
  // Organizer plays maximal matchings only and Indisposer only names players
  // who still have games. Off means the literal move sets.
  bool restrict_moves = true;
  SearchLimits limits;
};

class OnlineSolver {
 public:
  explicit OnlineSolver(const Multigraph& g, OnlineOptions options = {});

  const Multigraph& graph() const { return g_; }
  const std::vector<Edge>& distinct_edges() const { return distinct_; }
  const OnlineOptions& options() const { return options_; }

  GameState initial(const BudgetMap& t, int rounds) const;
  // Rejects absences outside the budgets or matches that are not available.
  GameState successor(const GameState& s, const std::vector<Vertex>& absent,
                      const std::vector<std::size_t>& matching) const;

  bool organizer_wins(const GameState& s);

  // Indices into distinct_edges() keeping the win, or nullopt when every
  // reply loses.
  std::optional<std::vector<std::size_t>> organizer_move(const GameState& s,
                                                         const std::vector<Vertex>& absent);
  // An absent set that refutes every reply, or nullopt when s is winning.
  std::optional<std::vector<Vertex>> indisposer_move(const GameState& s);

  // Absent sets Indisposer may choose in s under the current move rules.
  std::vector<std::vector<Vertex>> indisposer_choices(const GameState& s) const;
  // Matchings Organizer may answer with.
  std::vector<std::vector<std::size_t>> organizer_choices(const GameState& s,
                                                          const std::vector<Vertex>& absent) const;

  std::size_t memo_size() const { return memo_.size(); }
  const SearchStats& stats() const { return stats_; }

 private:
  struct Window {
    int lose_max = -1;       // largest rounds_left known to lose
    int win_min = 1 << 30;   // smallest rounds_left known to win
  };

  bool wins(const std::vector<int>& remaining, const std::vector<int>& budgets, int rounds);
  std::vector<int> normalized(const std::vector<int>& remaining, std::vector<int> budgets) const;
  std::string key(const std::vector<int>& remaining, const std::vector<int>& budgets) const;

  Multigraph g_;
  OnlineOptions options_;
  std::vector<Edge> distinct_;
  std::vector<int> multiplicity_;
  std::unordered_map<std::string, Window> memo_;
  SearchStats stats_;
};

struct StrategyOracle {
  std::shared_ptr<OnlineSolver> solver;
  BudgetMap budgets;
  int rounds = 0;
};

struct ChiOlResult {
  int value = 0;
  StrategyOracle oracle;  // plays `value` rounds
  SearchStats stats;
  std::size_t states = 0;
};

bool organizer_wins(const Multigraph& g, const BudgetMap& t, int rounds, OnlineOptions options = {});

// Smallest m for which Organizer wins, searched upward from chi'(g).
ChiOlResult chi_ol_exact(const Multigraph& g, const BudgetMap& t, OnlineOptions options = {});

// Organizer's reply from a winning state. Throws LosingState otherwise.
std::vector<Edge> play_optimal_round(StrategyOracle& oracle, const GameState& s,
                                     const std::vector<Vertex>& absent);

// Organizer replies on every state reachable under the oracle, plus
// Indisposer's refutation one round short. Stops after max_states entries.
nlohmann::json strategy_to_json(StrategyOracle& oracle, std::size_t max_states = 20000);

}  // namespace absence
