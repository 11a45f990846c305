#include "absence/kn.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>

#include "absence/errors.hpp"

namespace absence {

namespace {

std::size_t kn_edge_index(int n, int a, int b) {
  if (a > b) std::swap(a, b);
  return static_cast<std::size_t>(a * n - a * (a + 1) / 2 + (b - a - 1));
}

// One label per player, clamped to n+1; unlabeled players get n+1 too.
std::vector<int> clamped_labels(int n, const AbsenceAssignment& c) {
  if (static_cast<int>(c.size()) != n) throw InputError("labeling does not match K_n");
  std::vector<int> out(n, n + 1);
  for (int v = 0; v < n; ++v) {
    const auto& labels = c.at(static_cast<Vertex>(v));
    if (labels.size() > 1) throw InputError("construction needs at most one absence per player");
    if (!labels.empty()) out[v] = std::min(*labels.begin(), n + 1);
  }
  return out;
}

int single_label(const AbsenceAssignment& c, Vertex v) {
  const auto& labels = c.at(v);
  if (labels.size() > 1) throw InputError("classification needs at most one absence per player");
  return labels.empty() ? 0 : *labels.begin();
}

}  // namespace

ParallelClassLayout ParallelClassLayout::of(int n) {
  if (n < 2) throw InputError("parallel classes need n >= 2");
  ParallelClassLayout layout;
  layout.n = n;
  layout.classes.resize(n);
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      layout.classes[(a + b) % n].push_back(make_edge(a - 1, b - 1));
  return layout;
}

int ParallelClassLayout::class_of(const Edge& e) const {
  return static_cast<int>((e.u + 1 + e.v + 1) % n);
}

KnConstruction construct_kn_t1(int n, const AbsenceAssignment& c) {
  if (n < 2) throw InputError("construction needs n >= 2");
  const auto labels = clamped_labels(n, c);

  // Players sorted by label; position p (1-based) holds player order[p-1].
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return labels[a] < labels[b]; });

  std::vector<int> values;       // c_1 < ... < c_s
  std::vector<int> boundaries;   // m_1 < ... < m_s = n
  for (int p = 0; p < n; ++p) {
    const int value = labels[order[p]];
    if (values.empty() || values.back() != value) {
      if (!values.empty()) boundaries.push_back(p);
      values.push_back(value);
    }
  }
  boundaries.push_back(n);
  const int s = static_cast<int>(values.size());

  const auto layout = ParallelClassLayout::of(n);
  // Color per class in position space: first for edges beyond m_j, second inside.
  std::vector<std::pair<int, int>> class_colors(n, {0, 0});
  std::vector<int> class_split(n, 0);
  std::vector<bool> taken(n + 2, false);
  std::vector<bool> bichromatic(n, false);
  if (s > 1) {
    for (int j = 0; j + 1 < s; ++j) {
      const int k = (1 + boundaries[j]) % n;
      bichromatic[k] = true;
      class_colors[k] = {values[j], values[j + 1]};
      class_split[k] = boundaries[j];
    }
    for (int v : values) taken[v] = true;
  } else {
    taken[values[0]] = true;
  }
  int next_free = 1;
  for (int k = 0; k < n; ++k) {
    if (bichromatic[k]) continue;
    while (taken[next_free]) ++next_free;
    class_colors[k] = {next_free, next_free};
    taken[next_free] = true;
  }

  KnConstruction out;
  out.coloring.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  for (int k = 0; k < n; ++k) {
    for (const auto& e : layout.classes[k]) {
      // e is in position space with 0-based positions.
      const int pa = static_cast<int>(e.u) + 1, pb = static_cast<int>(e.v) + 1;
      Color col = class_colors[k].first;
      if (bichromatic[k] && pa <= class_split[k] && pb <= class_split[k])
        col = class_colors[k].second;
      out.coloring[kn_edge_index(n, order[pa - 1], order[pb - 1])] = col;
    }
  }
  out.bichromatic_classes = s - 1;

  const auto g = complete_graph(n);
  out.schedule = schedule_from_coloring(g, out.coloring, &c);
  out.rounds_used = static_cast<int>(out.schedule.rounds.size());
  auto violations = verify_schedule(g, c, out.schedule);
  if (!violations.empty() || out.rounds_used > n + 1)
    throw InternalFault("parallel-class construction failed verification: " +
                        (violations.empty() ? std::string("too many rounds")
                                            : violations.front().message));
  return out;
}

KnClassification classify_chi_c_kn(int n, const AbsenceAssignment& c) {
  if (n < 2) throw InputError("classification needs n >= 2");
  if (static_cast<int>(c.size()) != n) throw InputError("labeling does not match K_n");
  std::vector<int> freq(n + 1, 0);
  int overflow = 0;
  bool all_high = true;
  for (int v = 0; v < n; ++v) {
    const int label = single_label(c, static_cast<Vertex>(v));
    if (label == 0 || label > n) {
      ++overflow;
    } else {
      ++freq[label];
    }
    if (label != 0 && label < n) all_high = false;
  }
  KnClassification out;
  if (n % 2 == 0 && all_high) {
    out.value = out.literal_value = n - 1;
    return out;
  }
  int wrong = 0, wrong_attained = 0;
  for (int k = 1; k <= n; ++k) {
    if (freq[k] % 2 != n % 2) {
      ++wrong;
      if (freq[k] > 0) ++wrong_attained;
    }
  }
  out.value = wrong <= overflow ? n : n + 1;
  out.literal_value = wrong_attained <= overflow ? n : n + 1;
  return out;
}

bool SymmetricSquare::is_symmetric() const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (cells[i][j] != cells[j][i]) return false;
  return true;
}

bool SymmetricSquare::rows_distinct() const {
  for (int i = 0; i < n; ++i) {
    std::vector<int> row = cells[i];
    std::sort(row.begin(), row.end());
    if (std::adjacent_find(row.begin(), row.end()) != row.end()) return false;
  }
  return true;
}

namespace {

std::vector<int> diagonal_frequencies(std::span<const int> diagonal) {
  const int n = static_cast<int>(diagonal.size());
  std::vector<int> freq(n + 1, 0);
  for (int d : diagonal) {
    if (d < 1 || d > n) throw InputError("diagonal symbols must lie in 1..n");
    ++freq[d];
  }
  return freq;
}

}  // namespace

bool symmetric_latin_decision(std::span<const int> diagonal) {
  const int n = static_cast<int>(diagonal.size());
  const auto freq = diagonal_frequencies(diagonal);
  for (int k = 1; k <= n; ++k)
    if (freq[k] % 2 != n % 2) return false;
  return true;
}

bool symmetric_latin_decision_literal(std::span<const int> diagonal) {
  const int n = static_cast<int>(diagonal.size());
  const auto freq = diagonal_frequencies(diagonal);
  for (int k = 1; k <= n; ++k)
    if (freq[k] > 0 && freq[k] % 2 != n % 2) return false;
  return true;
}

std::optional<SymmetricSquare> symmetric_latin_construct(std::span<const int> diagonal,
                                                         const SearchLimits& limits) {
  const int n = static_cast<int>(diagonal.size());
  if (n < 1) throw InputError("empty diagonal");
  diagonal_frequencies(diagonal);
  if (n > 30) throw InputError("square too large for the backtracking search");

  SymmetricSquare sq;
  sq.n = n;
  sq.cells.assign(n, std::vector<int>(n, 0));
  std::vector<std::uint32_t> used(n, 0);  // bit k-1 for symbol k
  for (int i = 0; i < n; ++i) {
    sq.cells[i][i] = diagonal[i];
    used[i] |= 1u << (diagonal[i] - 1);
  }
  const std::uint32_t all = (1u << n) - 1;
  std::uint64_t nodes = 0;

  std::function<bool(int)> fill = [&](int left) -> bool {
    if (left == 0) return true;
    if (++nodes > limits.node_budget)
      throw SearchBudgetExceeded("Latin square search exceeded its node budget");
    int bi = -1, bj = -1, best = 64;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (sq.cells[i][j] != 0) continue;
        const int options = std::popcount(all & ~(used[i] | used[j]));
        if (options < best) {
          best = options;
          bi = i;
          bj = j;
        }
      }
    if (best == 0) return false;
    std::uint32_t options = all & ~(used[bi] | used[bj]);
    while (options) {
      const int k = std::countr_zero(options);
      options &= options - 1;
      sq.cells[bi][bj] = sq.cells[bj][bi] = k + 1;
      used[bi] |= 1u << k;
      used[bj] |= 1u << k;
      if (fill(left - 1)) return true;
      used[bi] &= ~(1u << k);
      used[bj] &= ~(1u << k);
    }
    sq.cells[bi][bj] = sq.cells[bj][bi] = 0;
    return false;
  };
  if (fill(n * (n - 1) / 2)) return sq;
  return std::nullopt;
}

SymmetricSquare symmetric_partial_latin(std::span<const int> diagonal) {
  const int n = static_cast<int>(diagonal.size());
  if (n < 2) throw InputError("partial square needs n >= 2");
  AbsenceAssignment c(n);
  for (int i = 0; i < n; ++i) {
    if (diagonal[i] < 1 || diagonal[i] > n + 1)
      throw InputError("diagonal symbols must lie in 1..n+1");
    c.add(static_cast<Vertex>(i), diagonal[i]);
  }
  const auto built = construct_kn_t1(n, c);
  SymmetricSquare sq;
  sq.n = n;
  sq.partial = true;
  sq.cells.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) {
    sq.cells[i][i] = diagonal[i];
    for (int j = i + 1; j < n; ++j)
      sq.cells[i][j] = sq.cells[j][i] = built.coloring[kn_edge_index(n, i, j)];
  }
  return sq;
}

Schedule round_robin(int n) {
  if (n < 2) throw InputError("round robin needs n >= 2");
  const int m = n % 2 == 0 ? n : n + 1;  // m-1 is the bye slot for odd n
  Schedule s;
  for (int r = 0; r < m - 1; ++r) {
    Round round;
    auto add = [&](int a, int b) {
      if (a < n && b < n) round.matches.push_back(make_edge(a, b));
    };
    add(r, m - 1);
    for (int k = 1; k < m / 2; ++k) add((r + k) % (m - 1), (r - k + m - 1) % (m - 1));
    std::sort(round.matches.begin(), round.matches.end());
    s.rounds.push_back(std::move(round));
  }
  return s;
}

}  // namespace absence
