#pragma once

// Live sessions, Organizer engines, Indisposer strategies and the simulation
// harness. Engines answer one round at a time: given the session so far and
// the round's absentees, they return the games to play.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "absence/bipartite.hpp"
#include "absence/core.hpp"
#include "absence/exact.hpp"
#include "absence/online.hpp"

namespace absence {

enum class SessionMode { prefixed, online };

std::string_view to_string(SessionMode mode);
SessionMode parse_session_mode(std::string_view text);

struct SessionState {
  Multigraph graph;
  BudgetMap original_budgets;
  BudgetMap budgets;
  std::vector<bool> pending;  // per edge index
  std::size_t pending_count = 0;
  Schedule transcript;
  SessionMode mode = SessionMode::online;
  int limit = 0;
  std::string engine;

  int rounds_played() const { return static_cast<int>(transcript.rounds.size()); }
  bool finished() const { return pending_count == 0; }
  std::vector<std::size_t> pending_edges() const;
};

SessionState start_session(Multigraph g, BudgetMap t, SessionMode mode, int limit,
                           std::string engine);

class OrganizerEngine {
 public:
  virtual ~OrganizerEngine() = default;
  virtual std::string name() const = 0;
  // Indices into state.graph.edges(), all pending and pairwise disjoint.
  virtual std::vector<std::size_t> respond(const SessionState& state,
                                           const std::vector<Vertex>& absent) = 0;
};

class IndisposerStrategy {
 public:
  virtual ~IndisposerStrategy() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Vertex> choose(const SessionState& state) = 0;
  virtual void reset() {}
};

// Maximal matching by urgency: smaller endpoint budgets first, then more
// games left at the endpoints, then edge order.
std::unique_ptr<OrganizerEngine> engine_greedy();
// Plays the game solver's winning replies for a fixed round limit.
std::unique_ptr<OrganizerEngine> engine_optimal_small(const Multigraph& g, const BudgetMap& t,
                                                      int limit, SearchLimits limits = {});

class PaintingEngine : public OrganizerEngine {
 public:
  PaintingEngine(const Multigraph& b, const Bipartition& blocks, const BudgetMap& t, int limit);
  std::string name() const override { return "painting"; }
  std::vector<std::size_t> respond(const SessionState& state,
                                   const std::vector<Vertex>& absent) override;

  const LineOrientation& orientation() const { return orientation_; }
  // Every edge's out-degree fits the limit, so the limit is guaranteed.
  bool guaranteed() const { return guaranteed_; }
  const std::vector<int>& deficiency() const { return painting_.deficiency; }

 private:
  LineOrientation orientation_;
  PaintingState painting_;
  bool guaranteed_ = false;
};

std::unique_ptr<PaintingEngine> engine_painting(const Multigraph& b, const BudgetMap& t, int limit,
                                                std::optional<Bipartition> blocks = std::nullopt);
// Replays an optimal schedule for absences known in advance.
std::unique_ptr<OrganizerEngine> engine_prefixed(const Multigraph& g, const AbsenceAssignment& c,
                                                 SearchLimits limits = {});

struct EnginePlan {
  std::string engine;
  int limit = 0;
  std::string limit_source;
};

// bipartite -> painting; small enough for the game solver -> optimal-small;
// otherwise greedy with the Shannon-type limit. Throws VacuousBound on
// edgeless graphs.
EnginePlan plan_engine(const Multigraph& g, const BudgetMap& t, SearchLimits solver_limits);

std::unique_ptr<OrganizerEngine> make_engine(const std::string& name, const Multigraph& g,
                                             const BudgetMap& t, int limit,
                                             SearchLimits limits = {});

// Validates the absentees, asks the engine, checks and records its reply.
// Throws SessionFinished, BudgetViolation, InputError, or InternalFault for
// an invalid engine reply.
std::vector<std::size_t> session_advance(SessionState& state, OrganizerEngine& engine,
                                         const std::vector<Vertex>& absent);

// Empty until round chi'(g), then keeps one endpoint of an unplayed game away
// for its whole budget, then the other.
std::unique_ptr<IndisposerStrategy> adversary_lower_bound(const Multigraph& g,
                                                          SearchLimits limits = {});
// U_i = { v : i in c(v) }. Throws BudgetViolation if c is not a t-labeling.
std::unique_ptr<IndisposerStrategy> adversary_scripted(const AbsenceAssignment& c,
                                                       const BudgetMap& t);
std::unique_ptr<IndisposerStrategy> adversary_random(std::uint64_t seed, double density);

// Every absent set Indisposer may name next.
std::vector<std::vector<Vertex>> absence_choices(const SessionState& state);

struct SimulationResult {
  SessionState final_state;
  bool completed = false;
  int rounds_used = 0;
  std::string engine;
  std::string adversary;
};

SimulationResult simulate(const Multigraph& g, const BudgetMap& t, OrganizerEngine& engine,
                          IndisposerStrategy& adversary, int limit);

nlohmann::json transcript_to_json(const SimulationResult& result);
std::string summary_csv(const std::vector<SimulationResult>& results);

struct WorstCase {
  // Most rounds any absence sequence forces; limit+1 when some branch is not
  // finished within the limit.
  int rounds = 0;
  bool completed_all = true;
  std::vector<std::vector<Vertex>> witness;  // absences along a worst branch
  std::uint64_t states = 0;
};

// The engine against every budget-respecting absence sequence. Engines must
// answer as a function of the pending games, budgets and round number.
WorstCase worst_case(const Multigraph& g, const BudgetMap& t, OrganizerEngine& engine, int limit,
                     std::uint64_t state_budget = 5'000'000);

}  // namespace absence
