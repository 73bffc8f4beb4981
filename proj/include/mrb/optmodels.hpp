#pragma once

// Total-buffer minimization under a running-buffer cap, and minimum feedback
// vertex sets of the labeled dependency graph.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/limits.hpp"
#include "mrb/plan.hpp"

namespace mrb {

inline constexpr int kTbDpLimit = 24;
inline constexpr int kExactFvsLimit = 24;

struct TbResult {
  int k = 0;
  int total_buffers = 0;
  std::vector<int> ordering;
};

/// Least number of to-buffer moves over orderings whose running buffer stays
/// within k. An object goes to the buffer exactly when it is in b(S) right
/// after its own pick, so the cost of an edge S \ o -> S is TC(o).
inline TbResult solve_tb_dp(const LabeledDepGraph& g, int k, Occupancy mode = Occupancy::Transient,
                            Deadline deadline = {}) {
  const int n = g.size();
  if (n > kTbDpLimit) throw TooLarge("solve_tb_dp", n, kTbDpLimit);
  if (k < 0) throw Infeasible(k);
  constexpr std::uint8_t kUnreached = std::numeric_limits<std::uint8_t>::max();
  const std::uint32_t states = std::uint32_t{1} << n;
  std::vector<std::uint32_t> out(n);
  for (int o = 0; o < n; ++o) out[o] = static_cast<std::uint32_t>(g.out_mask(o));
  auto buffer_of = [&](std::uint32_t s) {
    std::uint32_t b = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int o = std::countr_zero(rest);
      if (out[o] & ~s) b |= std::uint32_t{1} << o;
    }
    return b;
  };

  std::vector<std::uint8_t> cost(states, kUnreached), bsize(states, 0), last(states, kUnreached);
  cost[0] = 0;
  for (std::uint32_t s = 1; s < states; ++s) {
    deadline.poll();
    const std::uint32_t b = buffer_of(s);
    bsize[s] = static_cast<std::uint8_t>(std::popcount(b));
    if (bsize[s] > k) continue;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int o = std::countr_zero(rest);
      const std::uint32_t parent = s & ~(std::uint32_t{1} << o);
      if (cost[parent] == kUnreached) continue;
      const int tc = (b >> o) & 1U;
      if (mode == Occupancy::Transient && bsize[parent] + tc > k) continue;
      const int c = cost[parent] + tc;
      if (c < cost[s]) {
        cost[s] = static_cast<std::uint8_t>(c);
        last[s] = static_cast<std::uint8_t>(o);
      }
    }
  }
  const std::uint32_t full = states - 1;
  if (cost[full] == kUnreached) throw Infeasible(k);
  TbResult r;
  r.k = k;
  r.total_buffers = cost[full];
  r.ordering.resize(n);
  std::uint32_t s = full;
  for (int t = n - 1; t >= 0; --t) {
    r.ordering[t] = last[s];
    s &= ~(std::uint32_t{1} << last[s]);
  }
  return r;
}

struct FvsResult {
  std::vector<int> fvs;  // sorted
  int size = 0;
  bool exact = true;
};

namespace detail {

// True iff the subgraph induced by `keep` has no directed cycle.
inline bool acyclic_mask(const std::vector<std::uint32_t>& out, std::uint32_t keep) {
  for (bool changed = true; changed && keep;) {
    changed = false;
    for (std::uint32_t rest = keep; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      if (!(out[v] & keep)) {
        keep &= ~(std::uint32_t{1} << v);
        changed = true;
      }
    }
  }
  return keep == 0;
}

// Minimum FVS of one strongly connected component (local ids), by
// enumerating removal sets in increasing size, each size in increasing mask
// order.
inline std::vector<int> exact_component_fvs(const LabeledDepGraph& comp, Deadline& deadline) {
  const int m = comp.size();
  std::vector<std::uint32_t> out(m);
  for (int v = 0; v < m; ++v) out[v] = static_cast<std::uint32_t>(comp.out_mask(v));
  const std::uint32_t all = m == 32 ? ~0U : (std::uint32_t{1} << m) - 1;
  for (int size = 0; size <= m; ++size) {
    if (size == 0) {
      if (acyclic_mask(out, all)) return {};
      continue;
    }
    // Gosper's hack over all masks with `size` bits
    for (std::uint32_t x = (std::uint32_t{1} << size) - 1; x <= all && x != 0;) {
      deadline.poll();
      if (acyclic_mask(out, all & ~x)) {
        std::vector<int> fvs;
        for (std::uint32_t rest = x; rest; rest &= rest - 1) fvs.push_back(std::countr_zero(rest));
        return fvs;
      }
      const std::uint32_t c = x & (~x + 1), r = x + c;
      if (r == 0) break;
      x = (((r ^ x) >> 2) / c) | r;
    }
  }
  std::vector<int> every(m);
  for (int v = 0; v < m; ++v) every[v] = v;
  return every;
}

// Repeatedly strips vertices that cannot lie on a cycle, then removes the
// vertex maximizing in-degree times out-degree (lowest index on ties).
inline std::vector<int> greedy_fvs(const LabeledDepGraph& g) {
  const int n = g.size();
  std::vector<char> alive(n, 1);
  std::vector<int> fvs;
  while (true) {
    for (bool changed = true; changed;) {
      changed = false;
      for (int v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        const bool has_out = std::any_of(g.out(v).begin(), g.out(v).end(), [&](int w) { return alive[w]; });
        const bool has_in = std::any_of(g.in(v).begin(), g.in(v).end(), [&](int w) { return alive[w]; });
        if (!has_out || !has_in) {
          alive[v] = 0;
          changed = true;
        }
      }
    }
    int best = -1;
    long best_score = -1;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      long din = 0, dout = 0;
      for (int w : g.in(v)) din += alive[w];
      for (int w : g.out(v)) dout += alive[w];
      if (din * dout > best_score) {
        best_score = din * dout;
        best = v;
      }
    }
    if (best < 0) break;
    alive[best] = 0;
    fvs.push_back(best);
  }
  std::sort(fvs.begin(), fvs.end());
  return fvs;
}

}  // namespace detail

/// Minimum feedback vertex set. Exact per strongly connected component for
/// n <= 24; greedy above that (exact = false).
inline FvsResult solve_mfvs(const LabeledDepGraph& g, Deadline deadline = {}) {
  FvsResult r;
  if (g.size() > kExactFvsLimit) {
    r.fvs = detail::greedy_fvs(g);
    r.exact = false;
  } else {
    for (const auto& comp : strongly_connected_components(g)) {
      if (comp.size() == 1) continue;
      for (int local : detail::exact_component_fvs(induced_subgraph(g, comp), deadline))
        r.fvs.push_back(comp[local]);
    }
    std::sort(r.fvs.begin(), r.fvs.end());
  }
  r.size = static_cast<int>(r.fvs.size());
  return r;
}

}  // namespace mrb
