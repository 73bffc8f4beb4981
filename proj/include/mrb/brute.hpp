#pragma once

// Exhaustive minimum over all orderings. Used as the independent oracle for
// every other solver, so it deliberately shares nothing with them beyond
// the occupancy semantics of the simulators.

#include <climits>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/limits.hpp"
#include "mrb/plan.hpp"
#include "mrb/solve_result.hpp"

namespace mrb {

inline constexpr int kBruteLimit = 10;

namespace detail {

struct LabeledEnumerator {
  const LabeledDepGraph& g;
  Occupancy mode;
  Deadline& deadline;
  std::vector<int> pending, prefix, best_order;
  std::vector<char> used, buffered;
  int buf = 0;
  int best = INT_MAX;
  std::uint64_t visited = 0;

  void run(int so_far) {
    deadline.poll();
    ++visited;
    const int n = g.size();
    if (static_cast<int>(prefix.size()) == n) {
      if (so_far < best) {
        best = so_far;
        best_order = prefix;
      }
      return;
    }
    for (int o = 0; o < n; ++o) {
      if (used[o]) continue;
      // pick o
      used[o] = 1;
      prefix.push_back(o);
      for (int x : g.in(o)) --pending[x];
      const int before = buf;
      const bool to_buffer = pending[o] > 0;
      if (to_buffer) {
        buffered[o] = 1;
        ++buf;
      }
      const int transient = buf;
      std::vector<int> flushed;
      for (int x : g.in(o))
        if (buffered[x] && pending[x] == 0) {
          buffered[x] = 0;
          --buf;
          flushed.push_back(x);
        }
      const int step = mode == Occupancy::Transient ? transient : buf;
      const int cost = std::max(so_far, step);
      if (cost < best) run(cost);
      // undo
      for (int x : flushed) buffered[x] = 1;
      if (to_buffer) buffered[o] = 0;
      buf = before;
      for (int x : g.in(o)) ++pending[x];
      prefix.pop_back();
      used[o] = 0;
    }
  }
};

struct UnlabeledEnumerator {
  const UnlabeledDepGraph& g;
  Deadline& deadline;
  std::vector<int> refs, prefix, best_order;
  std::vector<char> used;
  int n_count = 0;
  int best = INT_MAX;
  std::uint64_t visited = 0;

  void run(int so_far) {
    deadline.poll();
    ++visited;
    const int n = g.num_goals();
    if (static_cast<int>(prefix.size()) == n) {
      if (so_far < best) {
        best = so_far;
        best_order = prefix;
      }
      return;
    }
    for (int q = 0; q < n; ++q) {
      if (used[q]) continue;
      used[q] = 1;
      prefix.push_back(q);
      for (int s : g.goal_adj(q))
        if (refs[s]++ == 0) ++n_count;
      const int occ = std::max(0, n_count - static_cast<int>(prefix.size()));
      const int cost = std::max(so_far, occ);
      if (cost < best) run(cost);
      for (int s : g.goal_adj(q))
        if (--refs[s] == 0) --n_count;
      prefix.pop_back();
      used[q] = 0;
    }
  }
};

}  // namespace detail

/// Exact MRB by enumerating all n! pick orders (n <= 10). Orders are visited
/// lexicographically and only strict improvements replace the incumbent, so
/// the witness is the lexicographically smallest optimal ordering.
inline SolveResult solve_brute(const LabeledDepGraph& g, Occupancy mode = Occupancy::Transient,
                               Deadline deadline = {}) {
  if (g.size() > kBruteLimit) throw TooLarge("solve_brute", g.size(), kBruteLimit);
  detail::Stopwatch sw;
  const int n = g.size();
  detail::LabeledEnumerator e{g, mode, deadline, {}, {}, {}, std::vector<char>(n, 0), std::vector<char>(n, 0)};
  e.pending.resize(n);
  for (int o = 0; o < n; ++o) e.pending[o] = static_cast<int>(g.out(o).size());
  e.run(0);
  SolveStats st{e.visited, 0, 0.0};
  auto r = detail::finish(g, e.best_order, st, mode);
  r.stats.wall_ms = sw.ms();
  return r;
}

/// Exact unlabeled MRB by enumerating all goal fill orders (n <= 10).
inline SolveResult solve_brute(const UnlabeledDepGraph& g, Deadline deadline = {}) {
  if (!g.balanced()) throw InputError("solve_brute: start and goal counts differ");
  if (g.num_goals() > kBruteLimit) throw TooLarge("solve_brute", g.num_goals(), kBruteLimit);
  detail::Stopwatch sw;
  detail::UnlabeledEnumerator e{g, deadline, std::vector<int>(g.num_starts(), 0), {}, {},
                                std::vector<char>(g.num_goals(), 0)};
  e.run(0);
  SolveStats st{e.visited, 0, 0.0};
  auto r = detail::finish(g, e.best_order, st);
  r.stats.wall_ms = sw.ms();
  return r;
}

}  // namespace mrb
