#pragma once

// All MRB solvers plus name-based dispatch.

#include <string>
#include <vector>

#include "mrb/brute.hpp"
#include "mrb/dfdp.hpp"
#include "mrb/dp.hpp"
#include "mrb/pqs.hpp"
#include "mrb/sepplan.hpp"

namespace mrb {

inline const std::vector<std::string>& solver_names() {
  static const std::vector<std::string> names{"brute", "dp", "dfdp", "pqs", "sepplan"};
  return names;
}

inline SolveResult solve_by_name(const std::string& solver, const LabeledDepGraph& g, Deadline deadline = {}) {
  if (solver == "brute") return solve_brute(g, Occupancy::Transient, deadline);
  if (solver == "dp") return solve_dp(g, deadline);
  if (solver == "dfdp") return solve_dfdp(g, DfdpOptions{}, deadline);
  if (solver == "pqs" || solver == "sepplan") throw InputError("solver '" + solver + "' needs an unlabeled graph");
  throw InputError("unknown solver '" + solver + "'");
}

inline SolveResult solve_by_name(const std::string& solver, const UnlabeledDepGraph& g, Deadline deadline = {}) {
  if (solver == "brute") return solve_brute(g, deadline);
  if (solver == "dfdp") return solve_dfdp(g, DfdpOptions{}, deadline);
  if (solver == "pqs") return solve_pqs(g, deadline);
  if (solver == "sepplan") return solve_sepplan(g, true, deadline);
  if (solver == "dp") throw InputError("solver 'dp' needs a labeled graph");
  throw InputError("unknown solver '" + solver + "'");
}

}  // namespace mrb
