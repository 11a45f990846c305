#include <doctest.h>

#include "absence/bipartition.hpp"
#include "absence/bounds.hpp"
#include "absence/errors.hpp"

using namespace absence;

TEST_CASE("lower bounds on complete graphs") {
  auto k4 = complete_graph(4);
  auto t1 = BudgetMap::constant(4, 1);
  CHECK(lb_prefixed(k4, t1) == 5);
  CHECK(lb_online(k4, t1, 3) == 5);

  auto k5 = complete_graph(5);
  CHECK(lb_prefixed(k5, BudgetMap::constant(5, 1)) == 6);
  CHECK(lb_online(k5, BudgetMap::constant(5, 1), 5) == 7);
}

TEST_CASE("minimum is taken over edges only") {
  // An isolated vertex with budget 0 must not lower the minimum.
  auto g = Multigraph::build({"a", "b", "z"}, {{"a", "b"}});
  BudgetMap t({2, 1, 0});
  CHECK(lb_prefixed(g, t) == 1 + 3);
  CHECK(ub_shannon(g, t) == 1 + 0 + 3);
}

TEST_CASE("Shannon-type upper bound") {
  auto tt = thick_triangle(2);
  CHECK(ub_shannon(tt, BudgetMap::constant(3, 0)) == 6);
  CHECK(ub_shannon(tt, BudgetMap::constant(3, 1)) == 8);
  CHECK(ub_shannon(complete_graph(4), BudgetMap::constant(4, 1)) == 3 + 1 + 2);
}

TEST_CASE("bipartite upper bound") {
  auto g = complete_bipartite(2, 3);
  auto blocks = detect_bipartition(g);
  REQUIRE(blocks);
  CHECK(ub_bipartite(g, *blocks, BudgetMap::constant(5, 1)) == 5);
  BudgetMap t({2, 0, 0, 0, 1});
  CHECK(ub_bipartite(g, *blocks, t) == 3 + 2 + 1);
}

TEST_CASE("bounds refuse edgeless graphs") {
  auto g = Multigraph::build({"a", "b"}, {});
  auto t = BudgetMap::constant(2, 1);
  CHECK_THROWS_AS(lb_prefixed(g, t), VacuousBound);
  CHECK_THROWS_AS(ub_shannon(g, t), VacuousBound);
  CHECK_THROWS_AS(bound_report(g, t), VacuousBound);
}

TEST_CASE("bipartition detection and validation") {
  CHECK(is_bipartite(cycle_graph(4)));
  CHECK_FALSE(is_bipartite(cycle_graph(5)));
  CHECK_FALSE(is_bipartite(thick_triangle(1)));
  auto g = complete_bipartite(2, 2);
  auto blocks = detect_bipartition(g);
  REQUIRE(blocks);
  CHECK(blocks->block(0) == std::vector<Vertex>{0, 1});
  CHECK_NOTHROW(validate_bipartition(g, *blocks));
  Bipartition bad{{0, 0, 0, 1}};
  CHECK_THROWS_AS(validate_bipartition(g, bad), InputError);
  Bipartition short_blocks{{0, 1}};
  CHECK_THROWS_AS(validate_bipartition(g, short_blocks), InputError);
}

TEST_CASE("bound report") {
  auto k4 = complete_graph(4);
  auto r = bound_report(k4, BudgetMap::constant(4, 1), 3);
  CHECK(r.lower.at("prefixed") == 5);
  CHECK(r.lower.at("online") == 5);
  CHECK(r.lower.at("chromatic_index_plus_t") == 4);
  CHECK(r.upper.at("shannon") == 6);
  CHECK_FALSE(r.bipartite);
  CHECK(r.upper.count("bipartite") == 0);
  CHECK(r.conjectured.at("prefixed") == 5);
  CHECK(r.conjectured.at("online") == 5);
  CHECK(r.total_coloring_relation);

  auto rb = bound_report(complete_bipartite(2, 2), BudgetMap({1, 0, 0, 0}));
  CHECK(rb.bipartite);
  CHECK(rb.upper.at("bipartite") == 3);
  CHECK(rb.conjectured.empty());
  CHECK(rb.lower.count("online") == 0);
  CHECK_FALSE(rb.total_coloring_relation);
}
