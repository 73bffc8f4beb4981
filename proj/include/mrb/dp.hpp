#pragma once

// Breadth-first subset dynamic program over the sets S of objects that have
// left their start poses.
//
//   T[S].b   = { o in S : some o' outside S with arc (o, o') }
//   T[S].MRB = min over last object o of
//              max(T[S \ o].MRB, |T[S].b|, |T[S \ o].b| + TC(o))
//
// where TC(o) = 1 iff o itself lands in T[S].b (it had to wait in the buffer
// while the objects it released were unloaded).

#include <bit>
#include <cstdint>
#include <limits>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/limits.hpp"
#include "mrb/solve_result.hpp"

namespace mrb {

inline constexpr int kDpLimit = 24;

/// Filled subset-DP table; exposes per-state values for inspection.
class DpTable {
 public:
  static constexpr std::uint8_t kUnset = std::numeric_limits<std::uint8_t>::max();

  explicit DpTable(const LabeledDepGraph& g, Deadline deadline = {}) : n_(g.size()) {
    if (n_ > kDpLimit) throw TooLarge("solve_dp", n_, kDpLimit);
    const std::uint32_t states = std::uint32_t{1} << n_;
    mrb_.assign(states, kUnset);
    bsize_.assign(states, 0);
    last_.assign(states, kUnset);
    out_.resize(n_);
    for (int o = 0; o < n_; ++o) out_[o] = static_cast<std::uint32_t>(g.out_mask(o));

    mrb_[0] = 0;
    for (std::uint32_t s = 1; s < states; ++s) {
      deadline.poll();
      const std::uint32_t buffer = buffer_of(s);
      bsize_[s] = static_cast<std::uint8_t>(std::popcount(buffer));
      std::uint8_t best = kUnset;
      std::uint8_t best_last = kUnset;
      for (std::uint32_t rest = s; rest; rest &= rest - 1) {
        const int o = std::countr_zero(rest);
        const std::uint32_t parent = s & ~(std::uint32_t{1} << o);
        const int tc = (buffer >> o) & 1U;
        int rb = std::max<int>(mrb_[parent], bsize_[s]);
        rb = std::max(rb, bsize_[parent] + tc);
        ++expanded_;
        if (rb < best) {
          best = static_cast<std::uint8_t>(rb);
          best_last = static_cast<std::uint8_t>(o);
        }
      }
      mrb_[s] = best;
      last_[s] = best_last;
    }
  }

  int size() const { return n_; }
  std::uint32_t full() const { return n_ == 32 ? ~0U : (std::uint32_t{1} << n_) - 1; }
  int mrb(std::uint32_t s) const { return mrb_[s]; }
  std::uint32_t buffer_of(std::uint32_t s) const {
    std::uint32_t b = 0;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int o = std::countr_zero(rest);
      if (out_[o] & ~s) b |= std::uint32_t{1} << o;
    }
    return b;
  }
  std::uint64_t expanded() const { return expanded_; }
  std::uint64_t states() const { return mrb_.size(); }

  /// One row of the recurrence for state S: the value obtained when `last`
  /// is the object that left its start most recently.
  struct Candidate {
    int last;
    int parent_mrb;
    std::uint32_t parent_buffer;
    std::uint32_t buffer;
    int value;
  };
  std::vector<Candidate> candidates(std::uint32_t s) const {
    std::vector<Candidate> rows;
    const std::uint32_t buffer = buffer_of(s);
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int o = std::countr_zero(rest);
      const std::uint32_t parent = s & ~(std::uint32_t{1} << o);
      const int tc = (buffer >> o) & 1U;
      const int value = std::max({static_cast<int>(mrb_[parent]), std::popcount(buffer),
                                  std::popcount(buffer_of(parent)) + tc});
      rows.push_back({o, mrb_[parent], buffer_of(parent), buffer, value});
    }
    return rows;
  }

  // Pick order recovered from the parent pointers.
  std::vector<int> witness() const {
    std::vector<int> order(n_);
    std::uint32_t s = full();
    for (int k = n_ - 1; k >= 0; --k) {
      const int o = last_[s];
      order[k] = o;
      s &= ~(std::uint32_t{1} << o);
    }
    return order;
  }

 private:
  int n_;
  std::vector<std::uint8_t> mrb_, bsize_, last_;
  std::vector<std::uint32_t> out_;
  std::uint64_t expanded_ = 0;
};

/// MRB of a labeled graph with n <= 24 by the full subset DP.
inline SolveResult solve_dp(const LabeledDepGraph& g, Deadline deadline = {}) {
  detail::Stopwatch sw;
  DpTable table(g, deadline);
  SolveStats st{table.expanded(), table.states(), 0.0};
  auto r = detail::finish(g, table.witness(), st);
  r.stats.wall_ms = sw.ms();
  return r;
}

}  // namespace mrb
