#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace fluidcorr::opt {

// Solver-wide tolerances. The values are fixed project constants; tests and
// the CLI may override through this struct.
struct SolverConfig {
  double tol_feas = 1e-8;   // primal feasibility
  double tol_gap = 1e-7;    // duality / MIP tie-break gap
  double tol_cs = 1e-7;     // complementary slackness
  double tol_pivot = 1e-9;  // smallest admissible pivot
  long max_iters = 0;       // 0 = derived from problem size
  std::string dump_dir;     // when nonempty, dump each LP as plain text
};

constexpr double kInf = std::numeric_limits<double>::infinity();

// min c'x  s.t.  rows*x <= rhs,  lower <= x <= upper  (lower defaults to 0).
// Dense on purpose: instances stay small and dual extraction is exact.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  LinearProgram() = default;
  explicit LinearProgram(std::size_t vars)
      : num_vars(vars),
        objective(vars, 0.0),
        lower(vars, 0.0),
        upper(vars, kInf) {}

  std::size_t add_row(std::vector<double> coeffs, double bound) {
    rows.push_back(std::move(coeffs));
    rhs.push_back(bound);
    return rows.size() - 1;
  }
};

enum class LPStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

const char* to_string(LPStatus s);

struct LPSolution {
  LPStatus status = LPStatus::NumericalFailure;
  double objective = 0.0;
  std::vector<double> x;              // size num_vars
  std::vector<double> row_duals;      // size rows.size(), >= 0
  std::vector<double> reduced_costs;  // size num_vars
  long iterations = 0;
};

// Two-phase primal simplex on a dense tableau. Dantzig pricing with a Bland
// fallback after a run of degenerate pivots, so termination is guaranteed.
LPSolution solve_lp(const LinearProgram& lp, const SolverConfig& cfg = {});

// Max feasibility violation of x for lp (constraints and bounds).
double lp_violation(const LinearProgram& lp, const std::vector<double>& x);

}  // namespace fluidcorr::opt
