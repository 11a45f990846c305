#pragma once

// Complete tournaments K_n: the parallel-class (n+1)-round construction, the
// closed form for chi'_c(K_n) with one absence per player, and symmetric Latin
// squares with a prescribed diagonal.
//
// Players are the vertices of complete_graph(n), i.e. indices 0..n-1 named
// "1".."n". Labels and symbols are 1-based.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "absence/core.hpp"
#include "absence/exact.hpp"

namespace absence {

// Players 1..n on a circle. Edge {a,b} lies in class (a+b) mod n.
struct ParallelClassLayout {
  int n = 0;
  std::vector<std::vector<Edge>> classes;  // n classes, possibly empty

  static ParallelClassLayout of(int n);
  int class_of(const Edge& e) const;
};

struct KnConstruction {
  Schedule schedule;
  std::vector<Color> coloring;  // indexed like complete_graph(n).edges()
  int rounds_used = 0;
  int bichromatic_classes = 0;
};

// A verified schedule of K_n in at most n+1 rounds that avoids c. Each player
// may carry at most one label. Throws InternalFault if the result fails
// verification.
KnConstruction construct_kn_t1(int n, const AbsenceAssignment& c);

struct KnClassification {
  int value = 0;          // all n symbols counted, unused ones with frequency 0
  int literal_value = 0;  // only symbols that occur are counted
  bool readings_differ() const { return value != literal_value; }
};

// chi'_c(K_n) for single labels; unlabeled players count as labels above n.
KnClassification classify_chi_c_kn(int n, const AbsenceAssignment& c);

struct SymmetricSquare {
  int n = 0;
  std::vector<std::vector<int>> cells;
  bool partial = false;  // symbols may exceed n

  bool is_symmetric() const;
  bool rows_distinct() const;  // no symbol twice in a row (hence column)
};

// Does a symmetric Latin square with this diagonal exist? Every symbol must
// occur on the diagonal a number of times congruent to n mod 2.
bool symmetric_latin_decision(std::span<const int> diagonal);
// The same question with only the occurring symbols checked.
bool symmetric_latin_decision_literal(std::span<const int> diagonal);

// Backtracking over the upper triangle. nullopt after exhausting the search.
std::optional<SymmetricSquare> symmetric_latin_construct(std::span<const int> diagonal,
                                                         const SearchLimits& limits = {});

// Off-diagonal entries from construct_kn_t1 with the diagonal as labels.
SymmetricSquare symmetric_partial_latin(std::span<const int> diagonal);

// Circle method: n-1 rounds for even n, n rounds for odd n.
Schedule round_robin(int n);

}  // namespace absence
