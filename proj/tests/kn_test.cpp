#include <doctest.h>

#include <random>

#include "absence/errors.hpp"
#include "absence/exact.hpp"
#include "absence/kn.hpp"
#include "oracles/brute.hpp"

using namespace absence;

namespace {

AbsenceAssignment labels(std::vector<int> values) { return AbsenceAssignment::single(values); }

// Diagonals of (n]^n, counted up like an odometer.
bool next_diagonal(std::vector<int>& d, int n) {
  for (auto& x : d) {
    if (++x <= n) return true;
    x = 1;
  }
  return false;
}

bool is_latin_with(const SymmetricSquare& sq, std::span<const int> diagonal) {
  if (!sq.is_symmetric() || !sq.rows_distinct()) return false;
  for (int i = 0; i < sq.n; ++i) {
    if (sq.cells[i][i] != diagonal[i]) return false;
    for (int j = 0; j < sq.n; ++j)
      if (sq.cells[i][j] < 1 || sq.cells[i][j] > sq.n) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("parallel classes partition the edges of K_n") {
  for (int n = 2; n <= 12; ++n) {
    auto layout = ParallelClassLayout::of(n);
    auto g = complete_graph(n);
    std::size_t total = 0;
    for (std::size_t k = 0; k < layout.classes.size(); ++k) {
      std::vector<bool> used(n, false);
      for (const auto& e : layout.classes[k]) {
        CHECK(layout.class_of(e) == static_cast<int>(k));
        CHECK_FALSE(used[e.u]);
        CHECK_FALSE(used[e.v]);
        used[e.u] = used[e.v] = true;
      }
      total += layout.classes[k].size();
    }
    CHECK(layout.classes.size() == static_cast<std::size_t>(n));
    CHECK(total == g.edge_count());
  }
}

TEST_CASE("the triangle from the introduction") {
  // A absent in round 3, B in round 3, C in round 4.
  auto k3 = complete_graph(3);
  auto c = labels({3, 3, 4});
  auto k = construct_kn_t1(3, c);
  CHECK(verify_schedule(k3, c, k.schedule).empty());
  CHECK(k.rounds_used == 4);
  CHECK(classify_chi_c_kn(3, c).value == 4);
  CHECK(classify_chi_c_kn(3, labels({1, 2, 3})).value == 3);
}

TEST_CASE("construction stays within n+1 rounds for random labels") {
  std::mt19937 rng(42);
  for (int n = 2; n <= 30; ++n) {
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> v(n);
      for (auto& x : v) x = static_cast<int>(rng() % (n + 3));  // 0 = unlabeled
      auto c = labels(v);
      auto k = construct_kn_t1(n, c);
      CHECK(k.rounds_used <= n + 1);
      CHECK(verify_schedule(complete_graph(n), c, k.schedule).empty());
    }
  }
}

TEST_CASE("construction rejects more than one label per player") {
  AbsenceAssignment c(3);
  c.add(0, 1);
  c.add(0, 2);
  CHECK_THROWS_AS(construct_kn_t1(3, c), InputError);
}

TEST_CASE("closed form agrees with search on small instances") {
  std::mt19937 rng(3);
  for (int n = 2; n <= 6; ++n) {
    auto g = complete_graph(n);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<int> v(n);
      for (auto& x : v) x = static_cast<int>(rng() % (n + 2));
      auto c = labels(v);
      CHECK(classify_chi_c_kn(n, c).value == chi_prime_c(g, c).value);
    }
  }
}

TEST_CASE("where the two readings of the parity rule differ") {
  // K_3 with labels 1,1,1: symbols 2 and 3 occur zero times, an even count.
  auto c = labels({1, 1, 1});
  auto cls = classify_chi_c_kn(3, c);
  CHECK(cls.value == oracle::brute_chi_c(complete_graph(3), c));
  CHECK(cls.value == 4);
  CHECK(cls.literal_value == 3);
  CHECK(cls.readings_differ());
  // The introductory triangle needs 4 rounds; counting only label 3 would say 3.
  auto intro = classify_chi_c_kn(3, labels({3, 3, 4}));
  CHECK(intro.value == 4);
  CHECK(intro.literal_value == 3);
  CHECK_FALSE(classify_chi_c_kn(3, labels({1, 2, 3})).readings_differ());
}

TEST_CASE("even n with every label at least n") {
  CHECK(classify_chi_c_kn(4, labels({4, 5, 0, 4})).value == 3);
  CHECK(classify_chi_c_kn(4, labels({4, 3, 5, 5})).value == 4);
}

TEST_CASE("symmetric Latin squares with a prescribed diagonal") {
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> d(n, 1);
    do {
      auto sq = symmetric_latin_construct(d);
      CHECK(symmetric_latin_decision(d) == sq.has_value());
      if (sq) CHECK(is_latin_with(*sq, d));
    } while (next_diagonal(d, n));
  }
  const std::vector<int> three_distinct{1, 2, 3};
  CHECK(symmetric_latin_decision(three_distinct));
  const std::vector<int> repeated{1, 1, 2};
  CHECK_FALSE(symmetric_latin_decision(repeated));
  // Even order: every symbol an even number of times, zero included.
  const std::vector<int> even{1, 1, 2, 2};
  CHECK(symmetric_latin_decision(even));
  const std::vector<int> odd_counts{1, 2, 3, 4};
  CHECK_FALSE(symmetric_latin_decision(odd_counts));
}

TEST_CASE("literal reading misses unused symbols") {
  const std::vector<int> d{1, 1, 1};
  CHECK_FALSE(symmetric_latin_decision(d));
  CHECK(symmetric_latin_decision_literal(d));
  CHECK_FALSE(symmetric_latin_construct(d).has_value());
}

TEST_CASE("partial Latin squares use at most n+1 symbols") {
  std::mt19937 rng(5);
  for (int n = 2; n <= 9; ++n) {
    std::vector<int> d(n);
    for (auto& x : d) x = 1 + static_cast<int>(rng() % (n + 1));
    auto sq = symmetric_partial_latin(d);
    CHECK(sq.is_symmetric());
    CHECK(sq.rows_distinct());
    for (int i = 0; i < n; ++i) {
      CHECK(sq.cells[i][i] == d[i]);
      for (int j = 0; j < n; ++j) CHECK(sq.cells[i][j] <= n + 1);
    }
  }
}

TEST_CASE("round robin") {
  for (int n = 2; n <= 11; ++n) {
    auto s = round_robin(n);
    CHECK(s.round_count() == static_cast<std::size_t>(n % 2 == 0 ? n - 1 : n));
    CHECK(verify_schedule(complete_graph(n), AbsenceAssignment(n), s).empty());
  }
}
