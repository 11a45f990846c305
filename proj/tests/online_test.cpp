#include <doctest.h>

#include <random>

#include "absence/bounds.hpp"
#include "absence/enumerate.hpp"
#include "absence/errors.hpp"
#include "absence/online.hpp"
#include "oracles/brute.hpp"

using namespace absence;

namespace {

BudgetMap ones(const Multigraph& g) { return BudgetMap::constant(g.vertex_count(), 1); }

}  // namespace

TEST_CASE("single absences on small complete graphs") {
  CHECK(chi_ol_exact(complete_graph(2), ones(complete_graph(2))).value == 3);
  CHECK(chi_ol_exact(complete_graph(3), ones(complete_graph(3))).value == 5);
  CHECK(chi_ol_exact(complete_graph(4), ones(complete_graph(4))).value == 5);
  CHECK(chi_ol_exact(complete_graph(5), ones(complete_graph(5))).value == 7);
  CHECK(chi_ol_exact(cycle_graph(4), ones(cycle_graph(4))).value == 4);
}

TEST_CASE("edgeless graphs need no rounds") {
  auto g = Multigraph::build({"a", "b"}, {});
  CHECK(chi_ol_exact(g, ones(g)).value == 0);
}

TEST_CASE("game values agree with the literal recursive definition") {
  std::mt19937 rng(7);
  int checked = 0;
  for (const auto& g : connected_graphs({.max_edges = 4})) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<int> t(g.vertex_count());
      for (auto& x : t) x = static_cast<int>(rng() % 3 == 0 ? 0 : rng() % 2 + (trial == 2));
      BudgetMap budgets(t);
      oracle::BruteGame brute(g);
      const int expected = brute.chi_ol(budgets);
      CHECK(chi_ol_exact(g, budgets).value == expected);
      CHECK(chi_ol_exact(g, budgets, {.restrict_moves = false}).value == expected);
      ++checked;
    }
  }
  CHECK(checked == 30);
}

TEST_CASE("parallel edges") {
  auto g = thick_triangle(2);
  BudgetMap t = ones(g);
  oracle::BruteGame brute(g);
  CHECK(chi_ol_exact(g, t).value == brute.chi_ol(t));
}

TEST_CASE("without absences the game value is the chromatic index") {
  for (const auto& g : connected_graphs({.max_edges = 5})) {
    auto t = BudgetMap::constant(g.vertex_count(), 0);
    CHECK(chi_ol_exact(g, t).value == oracle::brute_chi_prime(g));
  }
}

TEST_CASE("winning is monotone in the number of rounds and lies between the bounds") {
  for (const auto& g : connected_graphs({.max_edges = 5})) {
    auto t = ones(g);
    const int value = chi_ol_exact(g, t).value;
    const int chi = oracle::brute_chi_prime(g);
    CHECK(value >= lb_online(g, t, chi));
    CHECK(value <= ub_shannon(g, t));
    CHECK_FALSE(organizer_wins(g, t, value - 1));
    CHECK(organizer_wins(g, t, value));
    CHECK(organizer_wins(g, t, value + 1));
  }
}

TEST_CASE("solver moves and successors") {
  auto k3 = complete_graph(3);
  OnlineSolver solver(k3);
  auto s = solver.initial(ones(k3), 5);
  CHECK(solver.organizer_wins(s));
  CHECK_FALSE(solver.indisposer_move(s));

  auto reply = solver.organizer_move(s, {0});
  REQUIRE(reply);
  REQUIRE(reply->size() == 1);
  CHECK_FALSE(solver.distinct_edges()[reply->front()].touches(0));
  auto next = solver.successor(s, {0}, *reply);
  CHECK(next.rounds_left == 4);
  CHECK(next.budgets[0] == 0);
  CHECK(solver.organizer_wins(next));

  auto short_state = solver.initial(ones(k3), 4);
  CHECK_FALSE(solver.organizer_wins(short_state));
  auto refutation = solver.indisposer_move(short_state);
  REQUIRE(refutation);
  for (const auto& m : solver.organizer_choices(short_state, *refutation))
    CHECK_FALSE(solver.organizer_wins(solver.successor(short_state, *refutation, m)));

  CHECK_THROWS_AS(solver.successor(next, {0}, {}), BudgetViolation);
}

TEST_CASE("move sets") {
  auto k2 = complete_graph(2);
  OnlineSolver restricted(k2);
  OnlineSolver literal(k2, {.restrict_moves = false});
  auto s = restricted.initial(ones(k2), 3);
  CHECK(restricted.indisposer_choices(s).size() == 4);
  // Maximal matchings only: the single edge when both players are present.
  CHECK(restricted.organizer_choices(s, {}).size() == 1);
  CHECK(literal.organizer_choices(s, {}).size() == 2);
}

TEST_CASE("playing the optimal strategy finishes within the value") {
  auto k4 = complete_graph(4);
  auto r = chi_ol_exact(k4, ones(k4));
  REQUIRE(r.value == 5);
  auto& solver = *r.oracle.solver;
  auto s = solver.initial(ones(k4), r.value);
  std::vector<std::vector<Vertex>> plan{{}, {}, {}, {0, 1}, {2}};
  int rounds = 0;
  for (const auto& absent : plan) {
    if (s.done()) break;
    auto games = play_optimal_round(r.oracle, s, absent);
    std::vector<std::size_t> idx;
    for (const auto& e : games) {
      for (Vertex v : absent) CHECK_FALSE(e.touches(v));
      auto it = std::find(solver.distinct_edges().begin(), solver.distinct_edges().end(), e);
      REQUIRE(it != solver.distinct_edges().end());
      idx.push_back(static_cast<std::size_t>(it - solver.distinct_edges().begin()));
    }
    s = solver.successor(s, absent, idx);
    ++rounds;
  }
  CHECK(s.done());
  CHECK(rounds <= 5);

  auto losing = solver.initial(ones(k4), 4);
  CHECK_THROWS_AS(play_optimal_round(r.oracle, losing, {}), LosingState);
}

TEST_CASE("strategy export") {
  auto k3 = complete_graph(3);
  auto r = chi_ol_exact(k3, ones(k3));
  auto j = strategy_to_json(r.oracle);
  CHECK(j.at("rounds") == 5);
  CHECK(j.at("distinct_edges").size() == 3);
  CHECK(j.at("organizer").is_object());
  CHECK_FALSE(j.at("organizer").empty());
  CHECK(j.at("truncated") == false);
  CHECK(j.contains("indisposer"));
  auto small = strategy_to_json(r.oracle, 2);
  CHECK(small.at("truncated") == true);
}

TEST_CASE("node budget") {
  auto k5 = complete_graph(5);
  CHECK_THROWS_AS(chi_ol_exact(k5, ones(k5), {.limits = {100}}), SearchBudgetExceeded);
}
