#include "absence/online.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

#include "absence/errors.hpp"

namespace absence {

namespace {

using VertexMask = std::uint64_t;

VertexMask bit(Vertex v) { return VertexMask{1} << v; }

VertexMask mask_of(const std::vector<Vertex>& vs) {
  VertexMask m = 0;
  for (Vertex v : vs) m |= bit(v);
  return m;
}

std::string hex_hash(const std::string& bytes, int rounds) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char ch) {
    h ^= ch;
    h *= 1099511628211ull;
  };
  for (unsigned char ch : bytes) mix(ch);
  for (int i = 0; i < 4; ++i) mix(static_cast<unsigned char>(rounds >> (8 * i)));
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

bool GameState::done() const {
  return std::all_of(remaining.begin(), remaining.end(), [](int k) { return k == 0; });
}

OnlineSolver::OnlineSolver(const Multigraph& g, OnlineOptions options)
    : g_(g), options_(options) {
  if (g.vertex_count() > 64) throw InputError("the game solver handles at most 64 players");
  for (const auto& e : g.edges()) {
    auto it = std::find(distinct_.begin(), distinct_.end(), e);
    if (it == distinct_.end()) {
      distinct_.push_back(e);
      multiplicity_.push_back(1);
    } else {
      ++multiplicity_[it - distinct_.begin()];
    }
  }
}

GameState OnlineSolver::initial(const BudgetMap& t, int rounds) const {
  if (t.size() != g_.vertex_count()) throw InputError("budgets do not match the graph");
  return GameState{multiplicity_, t.values(), rounds};
}

std::vector<int> OnlineSolver::normalized(const std::vector<int>& remaining,
                                          std::vector<int> budgets) const {
  if (!options_.restrict_moves) return budgets;
  std::vector<bool> active(g_.vertex_count(), false);
  for (std::size_t i = 0; i < distinct_.size(); ++i)
    if (remaining[i] > 0) active[distinct_[i].u] = active[distinct_[i].v] = true;
  for (std::size_t v = 0; v < budgets.size(); ++v)
    if (!active[v]) budgets[v] = 0;
  return budgets;
}

std::string OnlineSolver::key(const std::vector<int>& remaining,
                              const std::vector<int>& budgets) const {
  std::string k;
  k.reserve(remaining.size() + budgets.size());
  for (int r : remaining) k.push_back(static_cast<char>(r));
  for (int b : budgets) k.push_back(static_cast<char>(b));
  return k;
}

namespace {

// Calls visit(chosen) for each matching of available distinct edges; stops
// as soon as visit returns true. With `maximal` only maximal ones are visited.
bool for_each_matching(const std::vector<Edge>& edges, const std::vector<int>& remaining,
                       VertexMask blocked, bool maximal,
                       const std::function<bool(const std::vector<std::size_t>&)>& visit) {
  std::vector<std::size_t> chosen;
  std::function<bool(std::size_t, VertexMask)> rec = [&](std::size_t i, VertexMask busy) -> bool {
    if (i == edges.size()) {
      if (maximal)
        for (std::size_t j = 0; j < edges.size(); ++j)
          if (remaining[j] > 0 && !((bit(edges[j].u) | bit(edges[j].v)) & (busy | blocked)))
            return false;
      return visit(chosen);
    }
    const VertexMask ends = bit(edges[i].u) | bit(edges[i].v);
    if (remaining[i] > 0 && !(ends & (busy | blocked))) {
      chosen.push_back(i);
      if (rec(i + 1, busy | ends)) return true;
      chosen.pop_back();
    }
    return rec(i + 1, busy);
  };
  return rec(0, 0);
}

std::vector<Vertex> absent_candidates(const std::vector<Edge>& edges,
                                      const std::vector<int>& remaining,
                                      const std::vector<int>& budgets, bool restrict_moves) {
  std::vector<bool> active(budgets.size(), !restrict_moves);
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (remaining[i] > 0) active[edges[i].u] = active[edges[i].v] = true;
  std::vector<Vertex> out;
  for (std::size_t v = 0; v < budgets.size(); ++v)
    if (budgets[v] > 0 && active[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

}  // namespace

bool OnlineSolver::wins(const std::vector<int>& remaining, const std::vector<int>& budgets,
                        int rounds) {
  if (++stats_.nodes > options_.limits.node_budget)
    throw SearchBudgetExceeded("game search exceeded its budget of " +
                               std::to_string(options_.limits.node_budget) + " nodes");

  std::vector<int> degree(g_.vertex_count(), 0);
  int total = 0;
  for (std::size_t i = 0; i < distinct_.size(); ++i) {
    degree[distinct_[i].u] += remaining[i];
    degree[distinct_[i].v] += remaining[i];
    total += remaining[i];
  }
  if (total == 0) return true;
  if (rounds <= 0) return false;

  // A player with d games left who can still skip b rounds needs d + b rounds.
  int active_budget = 0;
  for (std::size_t v = 0; v < degree.size(); ++v) {
    if (degree[v] + budgets[v] > rounds && degree[v] > 0) return false;
    if (degree[v] > 0) active_budget += budgets[v];
  }
  // Every round either schedules a game or costs Indisposer an absence.
  if (rounds >= total + active_budget) return true;

  const std::string k = key(remaining, budgets);
  if (auto it = memo_.find(k); it != memo_.end()) {
    if (rounds >= it->second.win_min) return true;
    if (rounds <= it->second.lose_max) return false;
  }

  const auto candidates =
      absent_candidates(distinct_, remaining, budgets, options_.restrict_moves);
  bool result = true;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << candidates.size()) && result;
       ++subset) {
    std::vector<int> next_budgets = budgets;
    VertexMask absent = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (subset & (std::uint64_t{1} << i)) {
        absent |= bit(candidates[i]);
        --next_budgets[candidates[i]];
      }
    result = for_each_matching(distinct_, remaining, absent, options_.restrict_moves,
                               [&](const std::vector<std::size_t>& f) {
                                 auto next = remaining;
                                 for (std::size_t i : f) --next[i];
                                 return wins(next, normalized(next, next_budgets), rounds - 1);
                               });
  }

  auto& window = memo_[k];
  if (result) {
    window.win_min = std::min(window.win_min, rounds);
  } else {
    window.lose_max = std::max(window.lose_max, rounds);
  }
  return result;
}

bool OnlineSolver::organizer_wins(const GameState& s) {
  if (s.remaining.size() != distinct_.size() || s.budgets.size() != g_.vertex_count())
    throw InputError("game state does not match the graph");
  return wins(s.remaining, normalized(s.remaining, s.budgets), s.rounds_left);
}

GameState OnlineSolver::successor(const GameState& s, const std::vector<Vertex>& absent,
                                  const std::vector<std::size_t>& matching) const {
  GameState next = s;
  for (Vertex v : absent) {
    if (v >= next.budgets.size()) throw InputError("unknown player in absent set");
    if (next.budgets[v] <= 0)
      throw BudgetViolation(g_.name(v) + " has no absences left");
    --next.budgets[v];
  }
  VertexMask busy = mask_of(absent);
  for (std::size_t i : matching) {
    if (i >= distinct_.size() || next.remaining[i] <= 0)
      throw InputError("matching uses a game that is not pending");
    const VertexMask ends = bit(distinct_[i].u) | bit(distinct_[i].v);
    if (ends & busy) throw InputError("matching is not independent of the absentees");
    busy |= ends;
    --next.remaining[i];
  }
  --next.rounds_left;
  return next;
}

std::vector<std::vector<Vertex>> OnlineSolver::indisposer_choices(const GameState& s) const {
  const auto candidates =
      absent_candidates(distinct_, s.remaining, s.budgets, options_.restrict_moves);
  std::vector<std::vector<Vertex>> out;
  for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << candidates.size()); ++subset) {
    std::vector<Vertex> u;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (subset & (std::uint64_t{1} << i)) u.push_back(candidates[i]);
    out.push_back(std::move(u));
  }
  return out;
}

std::vector<std::vector<std::size_t>> OnlineSolver::organizer_choices(
    const GameState& s, const std::vector<Vertex>& absent) const {
  std::vector<std::vector<std::size_t>> out;
  for_each_matching(distinct_, s.remaining, mask_of(absent), options_.restrict_moves,
                    [&](const std::vector<std::size_t>& f) {
                      out.push_back(f);
                      return false;
                    });
  return out;
}

std::optional<std::vector<std::size_t>> OnlineSolver::organizer_move(
    const GameState& s, const std::vector<Vertex>& absent) {
  for (Vertex v : absent)
    if (v >= s.budgets.size() || s.budgets[v] <= 0)
      throw BudgetViolation("absent set exceeds the budgets");
  if (s.done()) return std::vector<std::size_t>{};
  std::optional<std::vector<std::size_t>> found;
  for_each_matching(distinct_, s.remaining, mask_of(absent), options_.restrict_moves,
                    [&](const std::vector<std::size_t>& f) {
                      if (organizer_wins(successor(s, absent, f))) {
                        found = f;
                        return true;
                      }
                      return false;
                    });
  return found;
}

std::optional<std::vector<Vertex>> OnlineSolver::indisposer_move(const GameState& s) {
  if (organizer_wins(s)) return std::nullopt;
  if (s.rounds_left <= 0) return std::vector<Vertex>{};
  for (auto& u : indisposer_choices(s))
    if (!organizer_move(s, u)) return u;
  throw InternalFault("losing state without a refuting absent set");
}

bool organizer_wins(const Multigraph& g, const BudgetMap& t, int rounds, OnlineOptions options) {
  OnlineSolver solver(g, options);
  return solver.organizer_wins(solver.initial(t, rounds));
}

ChiOlResult chi_ol_exact(const Multigraph& g, const BudgetMap& t, OnlineOptions options) {
  if (t.size() != g.vertex_count()) throw InputError("budgets do not match the graph");
  const auto start = std::chrono::steady_clock::now();
  ChiOlResult out;
  out.oracle.solver = std::make_shared<OnlineSolver>(g, options);
  out.oracle.budgets = t;
  if (g.edgeless()) return out;

  int cap = static_cast<int>(g.edge_count());
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(static_cast<Vertex>(v)) > 0) cap += t.at(static_cast<Vertex>(v));

  auto& solver = *out.oracle.solver;
  for (int m = chi_prime(g, options.limits).value; m <= cap; ++m) {
    if (solver.organizer_wins(solver.initial(t, m))) {
      out.value = m;
      out.oracle.rounds = m;
      out.stats = solver.stats();
      out.stats.elapsed_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
              .count();
      out.states = solver.memo_size();
      return out;
    }
  }
  throw InternalFault("game search found no winning round count below the trivial bound");
}

std::vector<Edge> play_optimal_round(StrategyOracle& oracle, const GameState& s,
                                     const std::vector<Vertex>& absent) {
  auto& solver = *oracle.solver;
  if (!solver.organizer_wins(s)) throw LosingState("Organizer cannot win from this state");
  auto f = solver.organizer_move(s, absent);
  if (!f) throw LosingState("no reply keeps the win after these absences");
  std::vector<Edge> out;
  for (std::size_t i : *f) out.push_back(solver.distinct_edges()[i]);
  return out;
}

nlohmann::json strategy_to_json(StrategyOracle& oracle, std::size_t max_states) {
  using nlohmann::json;
  auto& solver = *oracle.solver;
  const auto& g = solver.graph();
  auto names = [&](const std::vector<Vertex>& vs) {
    json a = json::array();
    for (Vertex v : vs) a.push_back(g.name(v));
    return a;
  };
  auto matches = [&](const std::vector<std::size_t>& f) {
    json a = json::array();
    for (std::size_t i : f)
      a.push_back({g.name(solver.distinct_edges()[i].u), g.name(solver.distinct_edges()[i].v)});
    return a;
  };
  auto state_id = [&](const GameState& s) {
    std::string bytes;
    for (int r : s.remaining) bytes.push_back(static_cast<char>(r));
    for (int b : s.budgets) bytes.push_back(static_cast<char>(b));
    return hex_hash(bytes, s.rounds_left);
  };
  auto describe = [&](const GameState& s) {
    return json{{"remaining", s.remaining}, {"budgets", s.budgets}, {"rounds_left", s.rounds_left}};
  };

  json out;
  out["rounds"] = oracle.rounds;
  json edges = json::array();
  for (const auto& e : solver.distinct_edges()) edges.push_back({g.name(e.u), g.name(e.v)});
  out["distinct_edges"] = edges;
  bool truncated = false;

  json organizer = json::object();
  {
    std::deque<GameState> queue{solver.initial(oracle.budgets, oracle.rounds)};
    std::set<std::string> seen;
    while (!queue.empty()) {
      GameState s = queue.front();
      queue.pop_front();
      const std::string id = state_id(s);
      if (!seen.insert(id).second || s.done()) continue;
      if (seen.size() > max_states) {
        truncated = true;
        break;
      }
      json entry = describe(s);
      json replies = json::array();
      for (const auto& u : solver.indisposer_choices(s)) {
        auto f = solver.organizer_move(s, u);
        if (!f) throw InternalFault("oracle reached a losing state");
        replies.push_back({{"absent", names(u)}, {"matches", matches(*f)}});
        queue.push_back(solver.successor(s, u, *f));
      }
      entry["replies"] = replies;
      organizer[id] = entry;
    }
  }
  out["organizer"] = organizer;

  json indisposer = json::object();
  if (oracle.rounds > 0) {
    std::deque<GameState> queue{solver.initial(oracle.budgets, oracle.rounds - 1)};
    std::set<std::string> seen;
    while (!queue.empty() && !truncated) {
      GameState s = queue.front();
      queue.pop_front();
      const std::string id = state_id(s);
      if (!seen.insert(id).second) continue;
      if (seen.size() > max_states) {
        truncated = true;
        break;
      }
      auto u = solver.indisposer_move(s);
      if (!u) throw InternalFault("refutation reached a winning state");
      json entry = describe(s);
      entry["absent"] = names(*u);
      indisposer[id] = entry;
      if (s.rounds_left <= 0) continue;
      for (const auto& f : solver.organizer_choices(s, *u)) queue.push_back(solver.successor(s, *u, f));
    }
  }
  out["indisposer"] = indisposer;
  out["truncated"] = truncated;
  return out;
}

}  // namespace absence
