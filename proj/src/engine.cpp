#include "absence/engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <tuple>
#include <unordered_map>

#include "absence/bounds.hpp"
#include "absence/errors.hpp"
#include "absence/io.hpp"

namespace absence {

std::string_view to_string(SessionMode mode) {
  return mode == SessionMode::prefixed ? "prefixed" : "online";
}

SessionMode parse_session_mode(std::string_view text) {
  if (text == "prefixed" || text == "pre-fixed") return SessionMode::prefixed;
  if (text == "online" || text == "on-line") return SessionMode::online;
  throw InputError("unknown session mode '" + std::string(text) + "'");
}

std::vector<std::size_t> SessionState::pending_edges() const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < pending.size(); ++e)
    if (pending[e]) out.push_back(e);
  return out;
}

SessionState start_session(Multigraph g, BudgetMap t, SessionMode mode, int limit,
                           std::string engine) {
  if (t.size() != g.vertex_count()) throw InputError("budgets do not match the graph");
  SessionState s;
  s.pending.assign(g.edge_count(), true);
  s.pending_count = g.edge_count();
  s.graph = std::move(g);
  s.original_budgets = t;
  s.budgets = std::move(t);
  s.mode = mode;
  s.limit = limit;
  s.engine = std::move(engine);
  return s;
}

namespace {

class GreedyEngine : public OrganizerEngine {
 public:
  std::string name() const override { return "greedy"; }

  std::vector<std::size_t> respond(const SessionState& s,
                                   const std::vector<Vertex>& absent) override {
    const auto& g = s.graph;
    std::vector<bool> busy(g.vertex_count(), false);
    for (Vertex v : absent) busy[v] = true;
    std::vector<int> left(g.vertex_count(), 0);
    std::vector<std::size_t> candidates;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (!s.pending[e]) continue;
      ++left[g.edge(e).u];
      ++left[g.edge(e).v];
      if (!busy[g.edge(e).u] && !busy[g.edge(e).v]) candidates.push_back(e);
    }
    auto urgency = [&](std::size_t e) {
      const Edge& ed = g.edge(e);
      return std::tuple(s.budgets.at(ed.u) + s.budgets.at(ed.v), -(left[ed.u] + left[ed.v]), e);
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](std::size_t a, std::size_t b) { return urgency(a) < urgency(b); });
    std::vector<std::size_t> out;
    for (std::size_t e : candidates) {
      const Edge& ed = g.edge(e);
      if (busy[ed.u] || busy[ed.v]) continue;
      busy[ed.u] = busy[ed.v] = true;
      out.push_back(e);
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

class OptimalSmallEngine : public OrganizerEngine {
 public:
  OptimalSmallEngine(const Multigraph& g, int limit, SearchLimits limits)
      : solver_(g, OnlineOptions{true, limits}), limit_(limit) {}

  std::string name() const override { return "optimal-small"; }

  std::vector<std::size_t> respond(const SessionState& s,
                                   const std::vector<Vertex>& absent) override {
    const auto& distinct = solver_.distinct_edges();
    GameState game;
    game.remaining.assign(distinct.size(), 0);
    for (std::size_t e = 0; e < s.graph.edge_count(); ++e)
      if (s.pending[e])
        ++game.remaining[std::find(distinct.begin(), distinct.end(), s.graph.edge(e)) -
                         distinct.begin()];
    game.budgets = s.budgets.values();
    game.rounds_left = limit_ - s.rounds_played();
    if (game.done()) return {};
    if (game.rounds_left <= 0 || !solver_.organizer_wins(game))
      throw LosingState("the game cannot be won within " + std::to_string(limit_) + " rounds");
    auto f = solver_.organizer_move(game, absent);
    if (!f) throw LosingState("no reply keeps the win after these absences");

    std::vector<std::size_t> out;
    for (std::size_t i : *f)
      for (std::size_t e = 0; e < s.graph.edge_count(); ++e)
        if (s.pending[e] && s.graph.edge(e) == distinct[i]) {
          out.push_back(e);
          break;
        }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  OnlineSolver solver_;
  int limit_;
};

class PrefixedEngine : public OrganizerEngine {
 public:
  PrefixedEngine(const Multigraph& g, const AbsenceAssignment& c, SearchLimits limits)
      : coloring_(chi_prime_c(g, c, limits).coloring) {}

  std::string name() const override { return "prefixed"; }

  std::vector<std::size_t> respond(const SessionState& s,
                                   const std::vector<Vertex>& absent) override {
    const int round = s.rounds_played() + 1;
    std::vector<std::size_t> out;
    for (std::size_t e = 0; e < coloring_.size(); ++e) {
      if (!s.pending[e] || coloring_[e] != round) continue;
      const Edge& ed = s.graph.edge(e);
      if (std::find(absent.begin(), absent.end(), ed.u) != absent.end() ||
          std::find(absent.begin(), absent.end(), ed.v) != absent.end())
        throw InputError("round " + std::to_string(round) +
                         ": absences differ from the ones fixed in advance");
      out.push_back(e);
    }
    return out;
  }

 private:
  std::vector<Color> coloring_;
};

}  // namespace

PaintingEngine::PaintingEngine(const Multigraph& b, const Bipartition& blocks, const BudgetMap& t,
                               int limit)
    : painting_(PaintingState::fresh(b)) {
  validate_bipartition(b, blocks);
  std::vector<int> caps(b.edge_count());
  for (std::size_t e = 0; e < b.edge_count(); ++e)
    caps[e] = limit - 1 - t.at(b.edge(e).u) - t.at(b.edge(e).v);
  if (auto o = orientation_within(b, blocks, caps)) {
    orientation_ = *o;
    guaranteed_ = true;
  } else {
    orientation_ = LineOrientation::galvin(b, blocks, bipartite_edge_coloring(b, blocks));
    guaranteed_ = true;
    for (std::size_t e = 0; e < b.edge_count(); ++e)
      if (orientation_.out_degree(e) > caps[e]) guaranteed_ = false;
  }
}

std::vector<std::size_t> PaintingEngine::respond(const SessionState& s,
                                                 const std::vector<Vertex>& absent) {
  PaintingState local{s.pending, painting_.deficiency};
  auto chosen = painting_round(s.graph, orientation_, local, absent);
  painting_.deficiency = std::move(local.deficiency);
  return chosen;
}

std::unique_ptr<OrganizerEngine> engine_greedy() { return std::make_unique<GreedyEngine>(); }

std::unique_ptr<OrganizerEngine> engine_optimal_small(const Multigraph& g, const BudgetMap&,
                                                      int limit, SearchLimits limits) {
  return std::make_unique<OptimalSmallEngine>(g, limit, limits);
}

std::unique_ptr<PaintingEngine> engine_painting(const Multigraph& b, const BudgetMap& t, int limit,
                                                std::optional<Bipartition> blocks) {
  if (!blocks) blocks = detect_bipartition(b);
  if (!blocks) throw InputError("the painting engine needs a bipartite graph");
  return std::make_unique<PaintingEngine>(b, *blocks, t, limit);
}

std::unique_ptr<OrganizerEngine> engine_prefixed(const Multigraph& g, const AbsenceAssignment& c,
                                                 SearchLimits limits) {
  return std::make_unique<PrefixedEngine>(g, c, limits);
}

EnginePlan plan_engine(const Multigraph& g, const BudgetMap& t, SearchLimits solver_limits) {
  if (g.edgeless()) throw VacuousBound("a graph without games needs no schedule");
  if (auto blocks = detect_bipartition(g))
    return {"painting", ub_bipartite(g, *blocks, t), "bipartite bound"};
  try {
    return {"optimal-small", chi_ol_exact(g, t, OnlineOptions{true, solver_limits}).value,
            "game value"};
  } catch (const SearchBudgetExceeded&) {
    return {"greedy", ub_shannon(g, t), "shannon bound"};
  }
}

std::unique_ptr<OrganizerEngine> make_engine(const std::string& name, const Multigraph& g,
                                             const BudgetMap& t, int limit, SearchLimits limits) {
  if (name == "greedy") return engine_greedy();
  if (name == "optimal-small") return engine_optimal_small(g, t, limit, limits);
  if (name == "painting") return engine_painting(g, t, limit);
  throw InputError("unknown engine '" + name + "'");
}

std::vector<std::size_t> session_advance(SessionState& s, OrganizerEngine& engine,
                                         const std::vector<Vertex>& absent_in) {
  if (s.finished()) throw SessionFinished("every game has been scheduled");
  auto absent = absent_in;
  std::sort(absent.begin(), absent.end());
  if (std::adjacent_find(absent.begin(), absent.end()) != absent.end())
    throw InputError("a player is listed twice as absent");
  for (Vertex v : absent) {
    if (v >= s.graph.vertex_count()) throw InputError("unknown player in absent set");
    if (s.budgets.at(v) <= 0)
      throw BudgetViolation(s.graph.name(v) + " has no absences left");
  }

  auto reply = engine.respond(s, absent);
  std::sort(reply.begin(), reply.end());
  std::vector<bool> busy(s.graph.vertex_count(), false);
  for (Vertex v : absent) busy[v] = true;
  Round round;
  round.absent = absent;
  for (std::size_t e : reply) {
    if (e >= s.graph.edge_count() || !s.pending[e])
      throw InternalFault(engine.name() + " scheduled a game that is not pending");
    const Edge& ed = s.graph.edge(e);
    if (busy[ed.u] || busy[ed.v])
      throw InternalFault(engine.name() + " scheduled " + s.graph.edge_label(ed) +
                          " against an absence or another game");
    busy[ed.u] = busy[ed.v] = true;
    round.matches.push_back(ed);
  }

  for (std::size_t e : reply) s.pending[e] = false;
  s.pending_count -= reply.size();
  s.budgets = s.budgets.after_absence(absent);
  s.transcript.rounds.push_back(std::move(round));
  return reply;
}

namespace {

class LowerBoundAdversary : public IndisposerStrategy {
 public:
  LowerBoundAdversary(const Multigraph& g, SearchLimits limits)
      : chromatic_index_(chi_prime(g, limits).value) {}

  std::string name() const override { return "lower-bound"; }

  std::vector<Vertex> choose(const SessionState& s) override {
    if (s.rounds_played() + 1 < chromatic_index_) return {};
    if (!target_) {
      for (std::size_t e = 0; e < s.graph.edge_count(); ++e)
        if (s.pending[e] && (!target_ || s.graph.edge(e) < *target_)) target_ = s.graph.edge(e);
      if (!target_) return {};
    }
    if (s.budgets.at(target_->u) > 0) return {target_->u};
    if (s.budgets.at(target_->v) > 0) return {target_->v};
    return {};
  }

  void reset() override { target_.reset(); }

 private:
  int chromatic_index_;
  std::optional<Edge> target_;
};

class ScriptedAdversary : public IndisposerStrategy {
 public:
  explicit ScriptedAdversary(AbsenceAssignment c) : c_(std::move(c)) {}
  std::string name() const override { return "scripted"; }
  std::vector<Vertex> choose(const SessionState& s) override {
    return c_.absent_in(s.rounds_played() + 1);
  }

 private:
  AbsenceAssignment c_;
};

class RandomAdversary : public IndisposerStrategy {
 public:
  RandomAdversary(std::uint64_t seed, double density)
      : seed_(seed), density_(density), rng_(seed) {
    if (density < 0.0 || density > 1.0) throw InputError("density must lie in [0,1]");
  }
  std::string name() const override { return "random"; }
  std::vector<Vertex> choose(const SessionState& s) override {
    std::bernoulli_distribution coin(density_);
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < s.budgets.size(); ++v)
      if (s.budgets.at(static_cast<Vertex>(v)) > 0 && coin(rng_))
        out.push_back(static_cast<Vertex>(v));
    return out;
  }
  void reset() override { rng_.seed(seed_); }

 private:
  std::uint64_t seed_;
  double density_;
  std::mt19937_64 rng_;
};

}  // namespace

std::unique_ptr<IndisposerStrategy> adversary_lower_bound(const Multigraph& g,
                                                          SearchLimits limits) {
  return std::make_unique<LowerBoundAdversary>(g, limits);
}

std::unique_ptr<IndisposerStrategy> adversary_scripted(const AbsenceAssignment& c,
                                                       const BudgetMap& t) {
  if (c.size() != t.size() || !c.is_t_labeling(t))
    throw BudgetViolation("scripted absences exceed the budgets");
  return std::make_unique<ScriptedAdversary>(c);
}

std::unique_ptr<IndisposerStrategy> adversary_random(std::uint64_t seed, double density) {
  return std::make_unique<RandomAdversary>(seed, density);
}

std::vector<std::vector<Vertex>> absence_choices(const SessionState& s) {
  const auto support = s.budgets.support();
  if (support.size() > 20) throw InputError("too many players for exhaustive absences");
  std::vector<std::vector<Vertex>> out;
  for (std::uint32_t mask = 0; mask < (1u << support.size()); ++mask) {
    std::vector<Vertex> u;
    for (std::size_t i = 0; i < support.size(); ++i)
      if (mask & (1u << i)) u.push_back(support[i]);
    out.push_back(std::move(u));
  }
  return out;
}

SimulationResult simulate(const Multigraph& g, const BudgetMap& t, OrganizerEngine& engine,
                          IndisposerStrategy& adversary, int limit) {
  SimulationResult out;
  out.engine = engine.name();
  out.adversary = adversary.name();
  out.final_state = start_session(g, t, SessionMode::online, limit, engine.name());
  adversary.reset();
  auto& s = out.final_state;
  try {
    while (!s.finished() && s.rounds_played() < limit)
      session_advance(s, engine, adversary.choose(s));
  } catch (const LosingState&) {
    // The engine gave up; the run counts as not completed.
  }
  out.completed = s.finished();
  out.rounds_used = s.rounds_played();
  return out;
}

nlohmann::json transcript_to_json(const SimulationResult& r) {
  const auto& s = r.final_state;
  return {{"engine", r.engine},
          {"adversary", r.adversary},
          {"limit", s.limit},
          {"completed", r.completed},
          {"rounds_used", r.rounds_used},
          {"schedule", io::schedule_to_json(s.graph, s.transcript)},
          {"budgets_left", io::budgets_to_json(s.graph, s.budgets)}};
}

std::string summary_csv(const std::vector<SimulationResult>& results) {
  std::string out = "engine,adversary,rounds,completed\n";
  for (const auto& r : results)
    out += r.engine + "," + r.adversary + "," + std::to_string(r.rounds_used) + "," +
           (r.completed ? "true" : "false") + "\n";
  return out;
}

namespace {

struct WorstSearch {
  OrganizerEngine& engine;
  int limit;
  std::uint64_t state_budget;
  struct Entry {
    int rounds;
    std::vector<Vertex> worst;
  };
  std::unordered_map<std::string, Entry> memo;

  static std::string key(const SessionState& s) {
    std::string k;
    for (bool p : s.pending) k.push_back(p ? '1' : '0');
    for (int b : s.budgets.values()) k.push_back(static_cast<char>(b));
    k.push_back(static_cast<char>(s.rounds_played()));
    return k;
  }

  int eval(SessionState& s) {
    if (s.finished()) return s.rounds_played();
    if (s.rounds_played() >= limit) return limit + 1;
    const auto k = key(s);
    if (auto it = memo.find(k); it != memo.end()) return it->second.rounds;
    if (memo.size() >= state_budget)
      throw SearchBudgetExceeded("worst-case evaluation exceeded its state budget");

    Entry entry{-1, {}};
    for (const auto& u : absence_choices(s)) {
      const BudgetMap before = s.budgets;
      int value;
      try {
        const auto played = session_advance(s, engine, u);
        value = eval(s);
        for (std::size_t e : played) s.pending[e] = true;
        s.pending_count += played.size();
        s.transcript.rounds.pop_back();
        s.budgets = before;
      } catch (const LosingState&) {
        value = limit + 1;
      }
      if (value > entry.rounds) entry = {value, u};
      if (entry.rounds > limit) break;
    }
    memo[k] = entry;
    return entry.rounds;
  }
};

}  // namespace

WorstCase worst_case(const Multigraph& g, const BudgetMap& t, OrganizerEngine& engine, int limit,
                     std::uint64_t state_budget) {
  WorstSearch search{engine, limit, state_budget, {}};
  auto s = start_session(g, t, SessionMode::online, limit, engine.name());
  WorstCase out;
  out.rounds = search.eval(s);
  out.completed_all = out.rounds <= limit;
  out.states = search.memo.size();

  // Walk the recorded worst choices to produce a witness.
  while (!s.finished() && s.rounds_played() < limit) {
    auto it = search.memo.find(WorstSearch::key(s));
    if (it == search.memo.end()) break;
    out.witness.push_back(it->second.worst);
    try {
      session_advance(s, engine, it->second.worst);
    } catch (const LosingState&) {
      break;
    }
  }
  return out;
}

}  // namespace absence
