#pragma once

// Text formats: instance JSON, graph JSON, plan JSON, and the trace CSV.
// Writers are hand-formatted so output is byte-stable; readers use
// nlohmann::json.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "mrb/depgraph.hpp"
#include "mrb/error.hpp"
#include "mrb/geom.hpp"
#include "mrb/plan.hpp"

namespace mrb {

/// Shortest text carrying 17 significant digits; reads back bit-exact.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace detail {

inline void write_points(std::ostream& os, const std::vector<Point>& ps) {
  os << "[";
  for (std::size_t i = 0; i < ps.size(); ++i)
    os << (i ? ", " : "") << "[" << format_double(ps[i].x) << ", " << format_double(ps[i].y) << "]";
  os << "]";
}

template <typename T>
void write_int_list(std::ostream& os, const std::vector<T>& v) {
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << "]";
}

inline nlohmann::json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

}  // namespace detail

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

// ---------------------------------------------------------------------------
// Instances

inline std::string instance_to_json(const GeomInstance& inst) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"kind\": \"" << to_string(inst.kind) << "\",\n";
  os << "  \"n\": " << inst.size() << ",\n";
  os << "  \"r\": " << format_double(inst.radius()) << ",\n";
  os << "  \"w\": " << format_double(inst.start.workspace.width) << ",\n";
  os << "  \"h\": " << format_double(inst.start.workspace.height) << ",\n";
  os << "  \"start\": ";
  detail::write_points(os, inst.start.poses);
  os << ",\n  \"goal\": ";
  detail::write_points(os, inst.goal.poses);
  if (inst.labels) {
    os << ",\n  \"labels\": ";
    detail::write_int_list(os, *inst.labels);
  }
  os << "\n}\n";
  return os.str();
}

inline GeomInstance instance_from_json(const std::string& text) {
  const auto j = detail::parse_json(text, "instance");
  return detail::guarded("instance", [&] {
    GeomInstance inst;
    inst.kind = kind_from_string(j.at("kind").get<std::string>());
    const int n = j.at("n").get<int>();
    const double r = j.at("r").get<double>();
    const Workspace ws{j.at("w").get<double>(), j.at("h").get<double>()};
    auto points = [&](const char* key) {
      std::vector<Point> ps;
      for (const auto& p : j.at(key)) {
        if (!p.is_array() || p.size() != 2) throw InputError(std::string("instance: ") + key + " entries must be [x, y]");
        ps.push_back({p[0].get<double>(), p[1].get<double>()});
      }
      if (static_cast<int>(ps.size()) != n) throw InputError(std::string("instance: ") + key + " must have n entries");
      return ps;
    };
    inst.start = Arrangement{r, points("start"), ws};
    inst.goal = Arrangement{r, points("goal"), ws};
    if (j.contains("labels")) inst.labels = j.at("labels").get<std::vector<int>>();
    if (auto why = check_instance(inst)) throw InputError("instance: " + *why);
    return inst;
  });
}

// ---------------------------------------------------------------------------
// Graphs

using AnyGraph = std::variant<LabeledDepGraph, UnlabeledDepGraph>;

inline std::string graph_to_json(const LabeledDepGraph& g) {
  std::ostringstream os;
  os << "{\"type\": \"labeled\", \"n\": " << g.size() << ", \"arcs\": [";
  const auto& arcs = g.arcs();
  for (std::size_t i = 0; i < arcs.size(); ++i)
    os << (i ? ", " : "") << "[" << arcs[i].first << ", " << arcs[i].second << "]";
  os << "]}\n";
  return os.str();
}

/// Unlabeled arcs are [start, goal] pairs.
inline std::string graph_to_json(const UnlabeledDepGraph& g) {
  if (!g.balanced()) throw InputError("graph JSON needs equal start and goal counts");
  std::ostringstream os;
  os << "{\"type\": \"unlabeled\", \"n\": " << g.size() << ", \"arcs\": [";
  const auto& edges = g.edges();
  for (std::size_t i = 0; i < edges.size(); ++i)
    os << (i ? ", " : "") << "[" << edges[i].first << ", " << edges[i].second << "]";
  os << "]}\n";
  return os.str();
}

inline AnyGraph graph_from_json(const std::string& text) {
  const auto j = detail::parse_json(text, "graph");
  return detail::guarded("graph", [&]() -> AnyGraph {
    const std::string type = j.at("type").get<std::string>();
    const int n = j.at("n").get<int>();
    if (n < 0) throw InputError("graph: n must be non-negative");
    std::vector<IndexPair> arcs;
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() != 2) throw InputError("graph: arcs must be [i, j] pairs");
      arcs.emplace_back(a[0].get<int>(), a[1].get<int>());
    }
    if (type == "labeled") return LabeledDepGraph(n, std::move(arcs));
    if (type == "unlabeled") return UnlabeledDepGraph(n, std::move(arcs));
    throw InputError("graph: unknown type '" + type + "'");
  });
}

/// True when the text is an instance rather than a graph.
inline bool looks_like_instance(const std::string& text) {
  const auto j = detail::parse_json(text, "input");
  return j.is_object() && j.contains("kind") && j.contains("start");
}

// ---------------------------------------------------------------------------
// Plans

namespace detail {
inline std::string location_text(const Location& l) {
  switch (l.spot) {
    case Spot::Start: return "S";
    case Spot::Goal: return "G";
    case Spot::Buffer: return "B:" + std::to_string(l.index);
  }
  return "?";
}

inline Location parse_location(const std::string& s, std::optional<int> goal) {
  if (s == "S") return Location::start();
  if (s == "G") {
    if (!goal) throw InputError("plan: goal move without a goal index");
    return Location::goal(*goal);
  }
  if (s.rfind("B:", 0) == 0) {
    try {
      return Location::buffer(std::stoi(s.substr(2)));
    } catch (const std::exception&) {
    }
  }
  throw InputError("plan: bad location '" + s + "'");
}
}  // namespace detail

/// Labeled plans leave the goal implicit (object o goes to goal o);
/// unlabeled goal moves carry the goal index as "g".
inline std::string plan_to_json(const Plan& plan) {
  std::ostringstream os;
  os << "{\"n\": " << plan.n << ", \"labeled\": " << (plan.labeled ? "true" : "false") << ", \"actions\": [";
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const Action& a = plan.actions[i];
    os << (i ? ",\n  " : "\n  ") << "{\"o\": " << a.object << ", \"from\": \"" << detail::location_text(a.from)
       << "\", \"to\": \"" << detail::location_text(a.to) << "\"";
    if (!plan.labeled && a.to.spot == Spot::Goal) os << ", \"g\": " << a.to.index;
    os << "}";
  }
  os << (plan.actions.empty() ? "]}\n" : "\n]}\n");
  return os.str();
}

inline Plan plan_from_json(const std::string& text) {
  const auto j = detail::parse_json(text, "plan");
  return detail::guarded("plan", [&] {
    Plan p;
    p.n = j.at("n").get<int>();
    p.labeled = j.value("labeled", true);
    for (const auto& a : j.at("actions")) {
      Action act;
      act.object = a.at("o").get<int>();
      std::optional<int> goal;
      if (a.contains("g"))
        goal = a.at("g").get<int>();
      else if (p.labeled)
        goal = act.object;
      act.from = detail::parse_location(a.at("from").get<std::string>(), goal);
      act.to = detail::parse_location(a.at("to").get<std::string>(), goal);
      p.actions.push_back(act);
    }
    return p;
  });
}

/// step,object,action,occupancy,transient_peak with action written FROM->TO.
inline std::string trace_to_csv(const Plan& plan, const ExecutionTrace& trace) {
  std::ostringstream os;
  os << "step,object,action,occupancy,transient_peak\n";
  for (std::size_t i = 0; i < plan.actions.size(); ++i) {
    const Action& a = plan.actions[i];
    os << i + 1 << "," << a.object << "," << detail::location_text(a.from) << "->" << detail::location_text(a.to)
       << "," << trace.profile[i].occupancy << "," << trace.profile[i].transient_peak << "\n";
  }
  return os.str();
}

}  // namespace mrb
