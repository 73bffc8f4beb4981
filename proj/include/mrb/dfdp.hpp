#pragma once

// Depth-first decision DP. For k = k_start, k_start + 1, ... decide whether
// some ordering keeps the running buffer within k by a depth-first walk over
// subset states, memoizing subsets already proven to fail for this k.
//
// Two exact reductions keep the walk small:
//  - labeled: an object whose dependencies have all left their starts is
//    moved to its goal before anything else (it can only shrink later
//    buffers); graphs are split into strongly connected components, which
//    are solved one after another in dependency order.
//  - unlabeled: a goal with at most one uncleared overlapping start is
//    filled before anything else (its fill never raises occupancy).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <unordered_set>
#include <vector>

#include "mrb/bitmask.hpp"
#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/limits.hpp"
#include "mrb/solve_result.hpp"

namespace mrb {

struct DfdpOptions {
  int k_start = 0;
  bool decompose = true;  // labeled only
  Occupancy mode = Occupancy::Transient;
};

namespace detail {

template <std::size_t W>
class LabeledDecision {
 public:
  using Mask = WideMask<W>;

  LabeledDecision(const LabeledDepGraph& g, int k, Occupancy mode, Deadline& deadline, SolveStats& stats)
      : g_(g), n_(g.size()), k_(k), mode_(mode), deadline_(deadline), stats_(stats),
        pending_(n_), buffered_(n_, 0) {
    for (int o = 0; o < n_; ++o) pending_[o] = static_cast<int>(g.out(o).size());
  }

  std::optional<std::vector<int>> run() {
    if (search()) return order_;
    return std::nullopt;
  }

 private:
  struct Undo {
    int object;
    bool to_buffer;
    std::vector<int> flushed;
  };

  // applies the pick of o and returns the occupancy it incurs
  int apply(int o, Undo& u) {
    u.object = o;
    in_.set(o);
    order_.push_back(o);
    for (int x : g_.in(o)) --pending_[x];
    u.to_buffer = pending_[o] > 0;
    if (u.to_buffer) {
      buffered_[o] = 1;
      ++buf_;
    }
    const int transient = buf_;
    for (int x : g_.in(o))
      if (buffered_[x] && pending_[x] == 0) {
        buffered_[x] = 0;
        --buf_;
        u.flushed.push_back(x);
      }
    return mode_ == Occupancy::Transient ? transient : buf_;
  }

  void undo(const Undo& u) {
    for (int x : u.flushed) {
      buffered_[x] = 1;
      ++buf_;
    }
    if (u.to_buffer) {
      buffered_[u.object] = 0;
      --buf_;
    }
    for (int x : g_.in(u.object)) ++pending_[x];
    order_.pop_back();
    in_.reset(u.object);
  }

  bool search() {
    deadline_.poll();
    ++stats_.nodes_expanded;
    if (static_cast<int>(order_.size()) == n_) return true;
    if (failed_.count(in_)) return false;

    // a free object is always a safe next move
    for (int o = 0; o < n_; ++o)
      if (!in_.test(o) && pending_[o] == 0) {
        Undo u;
        apply(o, u);
        const bool ok = search();
        if (!ok) undo(u);
        if (!ok) remember_failure();
        return ok;
      }

    // every remaining move parks the object in the buffer; under completion
    // occupancy the same pick may flush others first, so only prune transient
    if (mode_ == Occupancy::Transient && buf_ + 1 > k_) {
      remember_failure();
      return false;
    }
    std::vector<std::pair<int, int>> moves;  // (-released, object)
    for (int o = 0; o < n_; ++o) {
      if (in_.test(o)) continue;
      int released = 0;
      for (int x : g_.in(o))
        if (buffered_[x] && pending_[x] == 1) ++released;
      moves.emplace_back(-released, o);
    }
    std::sort(moves.begin(), moves.end());
    for (auto [neg, o] : moves) {
      Undo u;
      const int occ = apply(o, u);
      if (occ <= k_ && search()) return true;
      undo(u);
    }
    remember_failure();
    return false;
  }

  void remember_failure() {
    failed_.insert(in_);
    stats_.states_stored = std::max<std::uint64_t>(stats_.states_stored, failed_.size());
  }

  const LabeledDepGraph& g_;
  int n_, k_;
  Occupancy mode_;
  Deadline& deadline_;
  SolveStats& stats_;
  std::vector<int> pending_;
  std::vector<char> buffered_;
  int buf_ = 0;
  Mask in_;
  std::vector<int> order_;
  std::unordered_set<Mask, WideMaskHash> failed_;
};

template <std::size_t W>
class UnlabeledDecision {
 public:
  using Mask = WideMask<W>;

  UnlabeledDecision(const UnlabeledDepGraph& g, int k, Deadline& deadline, SolveStats& stats)
      : g_(g), n_(g.num_goals()), k_(k), deadline_(deadline), stats_(stats), refs_(g.num_starts(), 0) {}

  std::optional<std::vector<int>> run() {
    if (search()) return order_;
    return std::nullopt;
  }

 private:
  int fresh_starts(int q) const {
    int u = 0;
    for (int s : g_.goal_adj(q))
      if (refs_[s] == 0) ++u;
    return u;
  }
  int occupancy_after(int q) const {
    return std::max(0, n_count_ + fresh_starts(q) - static_cast<int>(order_.size()) - 1);
  }
  void apply(int q) {
    filled_.set(q);
    order_.push_back(q);
    for (int s : g_.goal_adj(q))
      if (refs_[s]++ == 0) ++n_count_;
  }
  void undo(int q) {
    for (int s : g_.goal_adj(q))
      if (--refs_[s] == 0) --n_count_;
    order_.pop_back();
    filled_.reset(q);
  }

  bool search() {
    deadline_.poll();
    ++stats_.nodes_expanded;
    if (static_cast<int>(order_.size()) == n_) return true;
    if (failed_.count(filled_)) return false;

    for (int q = 0; q < n_; ++q)
      if (!filled_.test(q) && fresh_starts(q) <= 1) {
        apply(q);
        if (search()) return true;
        undo(q);
        remember_failure();
        return false;
      }

    std::vector<std::pair<int, int>> moves;  // (occupancy after, goal)
    for (int q = 0; q < n_; ++q)
      if (!filled_.test(q)) {
        const int occ = occupancy_after(q);
        if (occ <= k_) moves.emplace_back(occ, q);
      }
    std::sort(moves.begin(), moves.end());
    for (auto [occ, q] : moves) {
      apply(q);
      if (search()) return true;
      undo(q);
    }
    remember_failure();
    return false;
  }

  void remember_failure() {
    failed_.insert(filled_);
    stats_.states_stored = std::max<std::uint64_t>(stats_.states_stored, failed_.size());
  }

  const UnlabeledDepGraph& g_;
  int n_, k_;
  Deadline& deadline_;
  SolveStats& stats_;
  std::vector<int> refs_;
  int n_count_ = 0;
  Mask filled_;
  std::vector<int> order_;
  std::unordered_set<Mask, WideMaskHash> failed_;
};

inline std::optional<std::vector<int>> labeled_decide(const LabeledDepGraph& g, int k, Occupancy mode,
                                                      Deadline& deadline, SolveStats& stats) {
  std::optional<std::vector<int>> out;
  const bool ok = dispatch_mask_width(g.size(), [&](auto w) {
    out = LabeledDecision<decltype(w)::value>(g, k, mode, deadline, stats).run();
  });
  if (!ok) throw TooLarge("solve_dfdp", g.size(), kMaxMaskBits);
  return out;
}

inline std::optional<std::vector<int>> unlabeled_decide(const UnlabeledDepGraph& g, int k, Deadline& deadline,
                                                        SolveStats& stats) {
  std::optional<std::vector<int>> out;
  const bool ok = dispatch_mask_width(g.num_goals(), [&](auto w) {
    out = UnlabeledDecision<decltype(w)::value>(g, k, deadline, stats).run();
  });
  if (!ok) throw TooLarge("solve_dfdp", g.num_goals(), kMaxMaskBits);
  return out;
}

}  // namespace detail

/// Decision version: a pick order with running buffer <= k, if one exists.
inline std::optional<std::vector<int>> dfdp_feasible(const LabeledDepGraph& g, int k,
                                                     Occupancy mode = Occupancy::Transient,
                                                     Deadline deadline = {}) {
  SolveStats st;
  return detail::labeled_decide(g, k, mode, deadline, st);
}

inline std::optional<std::vector<int>> dfdp_feasible(const UnlabeledDepGraph& g, int k, Deadline deadline = {}) {
  SolveStats st;
  return detail::unlabeled_decide(g, k, deadline, st);
}

inline SolveResult solve_dfdp(const LabeledDepGraph& g, const DfdpOptions& opt = {}, Deadline deadline = {}) {
  detail::Stopwatch sw;
  SolveStats st;
  int k = std::max(0, opt.k_start);
  std::vector<int> order;
  if (!opt.decompose) {
    for (;; ++k) {
      if (auto w = detail::labeled_decide(g, k, opt.mode, deadline, st)) {
        order = std::move(*w);
        break;
      }
    }
  } else {
    // Components come out dependencies-first; solving them in that order
    // leaves the buffer empty between components.
    for (const auto& comp : strongly_connected_components(g)) {
      if (comp.size() == 1) {
        order.push_back(comp[0]);
        continue;
      }
      k = std::max(k, 1);
      const auto sub = induced_subgraph(g, comp);
      for (;; ++k) {
        if (auto w = detail::labeled_decide(sub, k, opt.mode, deadline, st)) {
          for (int local : *w) order.push_back(comp[local]);
          break;
        }
      }
    }
  }
  auto r = detail::finish(g, std::move(order), st, opt.mode);
  r.stats.wall_ms = sw.ms();
  return r;
}

inline SolveResult solve_dfdp(const UnlabeledDepGraph& g, const DfdpOptions& opt = {}, Deadline deadline = {}) {
  if (!g.balanced()) throw InputError("solve_dfdp: start and goal counts differ");
  detail::Stopwatch sw;
  SolveStats st;
  std::vector<int> order;
  for (int k = std::max(0, opt.k_start);; ++k) {
    if (auto w = detail::unlabeled_decide(g, k, deadline, st)) {
      order = std::move(*w);
      break;
    }
  }
  auto r = detail::finish(g, std::move(order), st);
  r.stats.wall_ms = sw.ms();
  return r;
}

}  // namespace mrb
