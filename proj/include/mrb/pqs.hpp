#pragma once

// Best-first search for unlabeled MRB over states (V, C): V the filled goals,
// C ⊇ N(V) the cleared starts. Occupancy of a state is max(0, |C| - |V|) and
// the value of a node is the largest occupancy along its path, which never
// decreases, so the first complete state popped is optimal.

#include <algorithm>
#include <cstdint>
#include <queue>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "mrb/bitmask.hpp"
#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/limits.hpp"
#include "mrb/solve_result.hpp"

namespace mrb {

namespace detail {

template <std::size_t W>
class PqsSearch {
 public:
  using Mask = WideMask<W>;

  PqsSearch(const UnlabeledDepGraph& g, Deadline& deadline, SolveStats& stats)
      : g_(g), n_(g.num_goals()), deadline_(deadline), stats_(stats), adj_(n_) {
    for (int q = 0; q < n_; ++q)
      for (int s : g.goal_adj(q)) adj_[q].set(s);
  }

  std::vector<int> run() {
    Node root;
    root.mrb = 0;
    add_free_goals(root);
    push(std::move(root), -1);

    int best_goal = -1;
    while (!open_.empty()) {
      deadline_.poll();
      const auto [mrb, neg_filled, id] = open_.top();
      open_.pop();
      if (nodes_[id].closed || nodes_[id].mrb != mrb) continue;
      if (incumbent_ >= 0 && mrb >= incumbent_) continue;
      nodes_[id].closed = true;
      ++stats_.nodes_expanded;
      if (-neg_filled == n_) {
        incumbent_ = mrb;
        best_goal = id;
        continue;
      }
      expand(id);
    }
    std::vector<int> order;
    for (int id = best_goal; id >= 0; id = nodes_[id].parent) {
      const auto& e = nodes_[id].added;
      order.insert(order.begin(), e.begin(), e.end());
    }
    return order;
  }

 private:
  struct Node {
    Mask filled, cleared;
    int mrb = 0;
    int parent = -1;
    std::vector<int> added;  // goals filled on the edge from parent
    bool closed = false;
  };
  struct KeyHash {
    std::size_t operator()(const std::pair<Mask, Mask>& k) const noexcept {
      WideMaskHash h;
      return h(k.first) * 0x100000001b3ULL ^ h(k.second);
    }
  };

  int occupancy(const Node& v) const { return std::max(0, v.cleared.count() - v.filled.count()); }

  // Fills free goals (at most one uncleared neighbour) until none remain.
  // Never raises occupancy, so a child's value is fixed before this runs.
  void add_free_goals(Node& v) const {
    for (bool again = true; again;) {
      again = false;
      for (int q = 0; q < n_; ++q) {
        if (v.filled.test(q) || adj_[q].count_minus(v.cleared) > 1) continue;
        v.filled.set(q);
        v.cleared |= adj_[q];
        v.added.push_back(q);
        again = true;
      }
    }
  }

  void push(Node child, int parent) {
    child.parent = parent;
    if (incumbent_ >= 0 && child.mrb >= incumbent_) return;
    auto key = std::make_pair(child.filled, child.cleared);
    auto it = index_.find(key);
    if (it != index_.end()) {
      Node& old = nodes_[it->second];
      if (old.closed || child.mrb >= old.mrb) return;
      old.mrb = child.mrb;
      old.parent = parent;
      old.added = std::move(child.added);
      open_.emplace(old.mrb, -old.filled.count(), it->second);
      return;
    }
    const int id = static_cast<int>(nodes_.size());
    index_.emplace(key, id);
    open_.emplace(child.mrb, -child.filled.count(), id);
    nodes_.push_back(std::move(child));
    stats_.states_stored = nodes_.size();
  }

  void expand(int id) {
    const Mask filled = nodes_[id].filled, cleared = nodes_[id].cleared;
    const int base = nodes_[id].mrb;
    for (int q = 0; q < n_; ++q) {
      if (filled.test(q)) continue;
      Node c;
      c.filled = filled;
      c.cleared = cleared | adj_[q];
      c.filled.set(q);
      c.added.push_back(q);
      c.mrb = std::max(base, occupancy(c));
      add_free_goals(c);
      push(std::move(c), id);
    }
    Mask wanted;  // starts next to some unfilled goal
    for (int q = 0; q < n_; ++q)
      if (!filled.test(q)) wanted |= adj_[q];
    for (int s = 0; s < g_.num_starts(); ++s) {
      if (cleared.test(s) || !wanted.test(s)) continue;
      Node c;
      c.filled = filled;
      c.cleared = cleared;
      c.cleared.set(s);
      c.mrb = std::max(base, occupancy(c));
      add_free_goals(c);
      push(std::move(c), id);
    }
  }

  const UnlabeledDepGraph& g_;
  int n_;
  Deadline& deadline_;
  SolveStats& stats_;
  std::vector<Mask> adj_;
  std::vector<Node> nodes_;
  std::unordered_map<std::pair<Mask, Mask>, int, KeyHash> index_;
  // (mrb, -|V|, id): lowest mrb first, then deepest, then oldest
  std::priority_queue<std::tuple<int, int, int>, std::vector<std::tuple<int, int, int>>, std::greater<>> open_;
  int incumbent_ = -1;
};

}  // namespace detail

/// Exact unlabeled MRB by best-first search with free-goal macro moves.
inline SolveResult solve_pqs(const UnlabeledDepGraph& g, Deadline deadline = {}) {
  if (!g.balanced()) throw InputError("solve_pqs: start and goal counts differ");
  detail::Stopwatch sw;
  SolveStats st;
  std::vector<int> order;
  const bool ok = dispatch_mask_width(g.num_goals(), [&](auto w) {
    order = detail::PqsSearch<decltype(w)::value>(g, deadline, st).run();
  });
  if (!ok) throw TooLarge("solve_pqs", g.num_goals(), kMaxMaskBits);
  auto r = detail::finish(g, std::move(order), st);
  r.stats.wall_ms = sw.ms();
  return r;
}

}  // namespace mrb
