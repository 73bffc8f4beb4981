#pragma once

// Binary program for total-buffer minimization under a running-buffer cap k,
// written as LP text for an external solver.
//
//   y_i_j   o_i leaves its start before o_j (i != j; y_i_i is the constant 1)
//   g_i_j   o_j is at its goal once o_i has left its start
//   b_i_j   o_j is in the buffer once o_i has left its start
//   ever_j  o_j is buffered at some point
//
// Paper mode states the goal and buffer rows exactly as printed. Semantic
// mode linearizes g_i_j = AND of y_l_i over l in {j} ∪ out(j) and
// b_i_j = y_j_i AND NOT g_i_j. Both share the ordering, cap, and ever rows.

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/plan.hpp"

namespace mrb {

enum class MilpMode { Paper, Semantic };

inline const char* to_string(MilpMode m) { return m == MilpMode::Paper ? "paper" : "semantic"; }

inline MilpMode milp_mode_from_string(const std::string& s) {
  if (s == "paper") return MilpMode::Paper;
  if (s == "semantic") return MilpMode::Semantic;
  throw InputError("unknown ILP mode '" + s + "' (expected paper or semantic)");
}

struct LinTerm {
  long coef;
  std::string var;
};

enum class Sense { Le, Ge, Eq };

struct MilpRow {
  std::string name;
  std::vector<LinTerm> terms;
  Sense sense;
  long rhs;
};

struct MilpModel {
  int n = 0;
  int k = 0;
  MilpMode mode = MilpMode::Paper;
  std::vector<LinTerm> objective;  // minimized
  std::vector<MilpRow> rows;
  std::vector<std::string> binaries;
};

using Assignment = std::map<std::string, int>;

namespace detail {

inline std::string var(const char* base, int i, int j) {
  return std::string(base) + "_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
}

// Accumulates a row; y_i_i terms fold into the right-hand side.
class RowBuilder {
 public:
  RowBuilder& add(long coef, const std::string& v) {
    if (coef != 0) terms_.push_back({coef, v});
    return *this;
  }
  RowBuilder& y(long coef, int i, int j) {
    if (i == j)
      constant_ += coef;
    else
      add(coef, var("y", i, j));
    return *this;
  }
  MilpRow build(std::string name, Sense sense, long rhs) {
    // merge repeated variables
    std::vector<LinTerm> merged;
    for (auto& t : terms_) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const LinTerm& m) { return m.var == t.var; });
      if (it == merged.end())
        merged.push_back(t);
      else
        it->coef += t.coef;
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(), [](const LinTerm& t) { return t.coef == 0; }),
                 merged.end());
    return {std::move(name), std::move(merged), sense, rhs - constant_};
  }

 private:
  std::vector<LinTerm> terms_;
  long constant_ = 0;
};

}  // namespace detail

inline MilpModel build_tb_milp(const LabeledDepGraph& g, int k, MilpMode mode = MilpMode::Paper) {
  const int n = g.size();
  if (n < 1) throw InputError("build_tb_milp: empty graph");
  using detail::var;
  using detail::RowBuilder;
  MilpModel m;
  m.n = n;
  m.k = k;
  m.mode = mode;
  auto c = [&](int j, int l) { return j == l || g.has_arc(j, l); };
  auto tag = [](const char* base, std::initializer_list<int> idx) {
    std::string s = base;
    for (int v : idx) s += "_" + std::to_string(v + 1);
    return s;
  };

  for (int j = 0; j < n; ++j) m.objective.push_back({1, "ever_" + std::to_string(j + 1)});

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m.rows.push_back(RowBuilder().y(1, i, j).y(1, j, i).build(tag("ord", {i, j}), Sense::Eq, 1));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        if (i == j || j == l || i == l) continue;
        m.rows.push_back(RowBuilder().y(1, i, j).y(1, j, l).y(-1, i, l).build(tag("trans", {i, j, l}), Sense::Le, 1));
      }

  for (int i = 0; i < n; ++i) {
    RowBuilder cap;
    for (int j = 0; j < n; ++j) cap.add(1, var("b", i, j));
    m.rows.push_back(cap.build(tag("cap", {i}), Sense::Le, k));
  }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::string gij = var("g", i, j), bij = var("b", i, j);
      if (mode == MilpMode::Paper) {
        RowBuilder lo, hi;
        lo.add(n, gij);
        hi.add(1, gij);
        for (int l = 0; l < n; ++l)
          if (c(j, l)) {
            lo.y(-1, i, l);
            hi.y(-1, i, l);
          }
        m.rows.push_back(lo.build(tag("goal_lo", {i, j}), Sense::Ge, 0));
        m.rows.push_back(hi.build(tag("goal_hi", {i, j}), Sense::Le, 0));
        RowBuilder blo, bhi;
        blo.add(2, bij);
        bhi.add(1, bij);
        for (int l = 0; l < n; ++l) {
          blo.y(1, i, l).add(1, var("g", i, l));
          bhi.y(1, i, l).add(1, var("g", i, l));
        }
        m.rows.push_back(blo.build(tag("buf_lo", {i, j}), Sense::Ge, 2L * n));
        m.rows.push_back(bhi.build(tag("buf_hi", {i, j}), Sense::Le, 2L * n));
      } else {
        RowBuilder all;
        all.add(1, gij);
        long deps = 0;
        for (int l = 0; l < n; ++l)
          if (c(j, l)) {
            m.rows.push_back(RowBuilder().add(1, gij).y(-1, l, i).build(tag("goal_dep", {i, j, l}), Sense::Le, 0));
            all.y(-1, l, i);
            ++deps;
          }
        m.rows.push_back(all.build(tag("goal_all", {i, j}), Sense::Ge, 1 - deps));
        m.rows.push_back(RowBuilder().add(1, bij).y(-1, j, i).build(tag("buf_left", {i, j}), Sense::Le, 0));
        m.rows.push_back(RowBuilder().add(1, bij).add(1, gij).build(tag("buf_not_goal", {i, j}), Sense::Le, 1));
        m.rows.push_back(
            RowBuilder().add(1, bij).add(1, gij).y(-1, j, i).build(tag("buf_def", {i, j}), Sense::Ge, 0));
      }
    }

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      m.rows.push_back(RowBuilder()
                           .add(1, "ever_" + std::to_string(j + 1))
                           .add(-1, var("b", i, j))
                           .build(tag("ever", {j, i}), Sense::Ge, 0));

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) m.binaries.push_back(var("y", i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.binaries.push_back(var("g", i, j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.binaries.push_back(var("b", i, j));
  for (int j = 0; j < n; ++j) m.binaries.push_back("ever_" + std::to_string(j + 1));
  return m;
}

namespace detail {

inline void write_terms(std::ostream& os, const std::vector<LinTerm>& terms) {
  if (terms.empty()) {
    os << "0";
    return;
  }
  bool first = true;
  for (const auto& t : terms) {
    const long a = t.coef < 0 ? -t.coef : t.coef;
    if (first)
      os << (t.coef < 0 ? "-" : "");
    else
      os << (t.coef < 0 ? " - " : " + ");
    if (a != 1) os << a << " ";
    os << t.var;
    first = false;
  }
}

}  // namespace detail

/// LP text: OBJECTIVE, CONSTRAINTS, BINARY sections, then END.
inline std::string write_lp(const MilpModel& m) {
  std::ostringstream os;
  os << "\\ total buffers, n = " << m.n << ", k = " << m.k << ", mode = " << to_string(m.mode) << "\n";
  os << "OBJECTIVE\n min: ";
  detail::write_terms(os, m.objective);
  os << "\nCONSTRAINTS\n";
  for (const auto& r : m.rows) {
    os << " " << r.name << ": ";
    detail::write_terms(os, r.terms);
    os << (r.sense == Sense::Le ? " <= " : r.sense == Sense::Ge ? " >= " : " = ") << r.rhs << "\n";
  }
  os << "BINARY\n";
  for (const auto& v : m.binaries) os << " " << v << "\n";
  os << "END\n";
  return os.str();
}

inline long evaluate(const std::vector<LinTerm>& terms, const Assignment& a) {
  long sum = 0;
  for (const auto& t : terms) {
    auto it = a.find(t.var);
    if (it == a.end()) throw InputError("assignment lacks variable " + t.var);
    sum += t.coef * it->second;
  }
  return sum;
}

/// Name of the first row the assignment violates, if any.
inline std::optional<std::string> check_assignment(const MilpModel& m, const Assignment& a) {
  for (const auto& r : m.rows) {
    const long lhs = evaluate(r.terms, a);
    const bool ok = r.sense == Sense::Le ? lhs <= r.rhs : r.sense == Sense::Ge ? lhs >= r.rhs : lhs == r.rhs;
    if (!ok) return r.name;
  }
  return std::nullopt;
}

/// Variable values induced by a pick order under completion-time occupancy.
inline Assignment assignment_from_ordering(const LabeledDepGraph& g, const std::vector<int>& ordering) {
  const int n = g.size();
  check_permutation(ordering, n);
  std::vector<int> pos(n);
  for (int t = 0; t < n; ++t) pos[ordering[t]] = t;
  auto left = [&](int l, int i) { return pos[l] <= pos[i]; };  // o_l gone once o_i has left
  Assignment a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) a[detail::var("y", i, j)] = pos[i] < pos[j];
  std::vector<int> ever(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool at_goal = left(j, i);
      for (int l : g.out(j)) at_goal = at_goal && left(l, i);
      const bool in_buffer = left(j, i) && !at_goal;
      a[detail::var("g", i, j)] = at_goal;
      a[detail::var("b", i, j)] = in_buffer;
      ever[j] |= in_buffer;
    }
  for (int j = 0; j < n; ++j) a["ever_" + std::to_string(j + 1)] = ever[j];
  return a;
}

/// Checks the assignment induced by `ordering` against the model; returns
/// the first violated row name, or nullopt when all rows hold.
inline std::optional<std::string> check_encoding(const LabeledDepGraph& g, const std::vector<int>& ordering, int k,
                                                 const MilpModel& m) {
  if (m.k != k || m.n != g.size()) throw InputError("check_encoding: model built for a different graph or cap");
  return check_assignment(m, assignment_from_ordering(g, ordering));
}

}  // namespace mrb
