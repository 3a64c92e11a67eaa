#pragma once

#include <cstddef>
#include <vector>

#include "fluidcorr/lp.hpp"

namespace fluidcorr::opt {

// Mixed-integer feasibility problem: the LP carries all linear constraints,
// binary_vars lists the variables restricted to {0,1}. When has_objective is
// set, lp.objective acts as a tie-break and the solve returns an assignment
// within tol_gap of the true optimum; otherwise any feasible point is fine.
struct MIPFeasibilityProblem {
  LinearProgram lp;
  std::vector<std::size_t> binary_vars;
  bool has_objective = false;
  std::size_t binary_limit = 2048;
  // Optional full assignments over binary_vars to probe before searching.
  std::vector<std::vector<int>> hints;
};

enum class MIPStatus { Feasible, Infeasible, LimitExceeded, NumericalFailure };

const char* to_string(MIPStatus s);

struct MIPResult {
  MIPStatus status = MIPStatus::NumericalFailure;
  std::vector<double> x;
  double objective = 0.0;
  long nodes = 0;
};

// Depth-first branch and bound with LP relaxation bounding, nearest-value
// branching and a rounding probe. Exhaustive within the binary limit.
MIPResult solve_mip_feasibility(const MIPFeasibilityProblem& mp,
                                const SolverConfig& cfg = {});

}  // namespace fluidcorr::opt
