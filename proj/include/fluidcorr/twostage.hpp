#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fluidcorr/demand.hpp"
#include "fluidcorr/lp.hpp"
#include "fluidcorr/network.hpp"

namespace fluidcorr {

// Deterministic fluid-model input: T x n nonnegative rates. The convention
// throughout is per-period staffing cost c; the horizon total c~ = c * T is
// derived where needed and spelled out in every report.
struct ArrivalRateProfile {
  std::size_t T = 0;
  std::size_t n = 0;
  std::vector<std::vector<double>> lambda;  // [t][i]

  void check() const;
  static ArrivalRateProfile constant(std::size_t T, std::vector<double> rates);
};

// One period of the recourse: allocation x plus duals (y for A x <= b,
// z for R x <= d) and the realized abandonment cost.
struct PeriodSolution {
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> z;
  double weight = 1.0;
  double abandonment = 0.0;
};

struct SecondStageResult {
  double value = 0.0;  // sum over periods of p'(D_t - R x_t)
  std::vector<PeriodSolution> periods;
};

struct StaffingSolution {
  std::vector<double> b;
  double objective = 0.0;
  double staffing_cost = 0.0;     // c'b * T
  double abandonment_cost = 0.0;  // expected/weighted recourse
  std::vector<PeriodSolution> periods;
  std::string tie_break;
  std::string method;  // "joint-lp" or "benders"
};

enum class TieBreak { None, MinNorm };

// pi(b, D): per-period allocation LPs (the inner problem is separable).
SecondStageResult second_stage(const ServiceNetwork& net, const std::vector<double>& b,
                               const std::vector<std::vector<double>>& demand_path,
                               const opt::SolverConfig& cfg = {});

// Deterministic fluid problem at profile lambda; returns a minimizer of
// c'b T + pi(b, lambda). Duals satisfy the optimality system exactly.
StaffingSolution solve_fluid(const ServiceNetwork& net, const ArrivalRateProfile& lambda,
                             TieBreak tie_break = TieBreak::MinNorm,
                             const opt::SolverConfig& cfg = {});

// Sample-average staffing problem over the scenario set (weights respected):
// min_b c'b T + sum_z w_z pi(b, D^(z)).
StaffingSolution solve_saa(const ServiceNetwork& net, const DemandScenarioSet& ds,
                           TieBreak tie_break = TieBreak::MinNorm,
                           const opt::SolverConfig& cfg = {});

// c'b T + sum_z w_z pi(b, D^(z)) for a fixed b.
double expected_cost(const ServiceNetwork& net, const std::vector<double>& b,
                     const DemandScenarioSet& ds, const opt::SolverConfig& cfg = {});

// Residuals of the fluid optimality system, grouped as primal feasibility,
// dual feasibility and the four complementary-slackness identities.
struct KKTReport {
  bool has_certificate = false;
  double primal_feas = 0.0;
  double dual_feas = 0.0;
  double cs_capacity = 0.0;   // y_t'(A x_t - b)
  double cs_demand = 0.0;     // z_t'(R x_t - lambda_t)
  double cs_staffing = 0.0;   // b'(cT - sum_t y_t)
  double cs_allocation = 0.0; // x_t'(A'y_t + R'z_t - R'p)
  double max_residual = 0.0;
  bool pass = false;
  std::string reason;
};

KKTReport verify_kkt(const ServiceNetwork& net, const ArrivalRateProfile& lambda,
                     const StaffingSolution& candidate, double tol = 1e-6);

}  // namespace fluidcorr
