#include "fluidcorr/twostage.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluidcorr {

using opt::LinearProgram;
using opt::LPSolution;
using opt::LPStatus;
using opt::SolverConfig;

void ArrivalRateProfile::check() const {
  if (lambda.size() != T) throw std::invalid_argument("profile has wrong period count");
  for (const auto& row : lambda) {
    if (row.size() != n) throw std::invalid_argument("profile has wrong class count");
    for (double v : row)
      if (!(v >= 0.0) || !std::isfinite(v))
        throw std::invalid_argument("arrival rates must be finite and nonnegative");
  }
}

ArrivalRateProfile ArrivalRateProfile::constant(std::size_t T, std::vector<double> rates) {
  ArrivalRateProfile out;
  out.T = T;
  out.n = rates.size();
  out.lambda.assign(T, rates);
  out.check();
  return out;
}

namespace {

// min p'(d - R x) s.t. A x <= b, R x <= d, x >= 0 for one period.
LinearProgram period_lp(const ServiceNetwork& net, const std::vector<double>& b,
                        const std::vector<double>& d) {
  LinearProgram lp(net.k);
  for (std::size_t j = 0; j < net.k; ++j)
    lp.objective[j] = -net.p[net.class_of[j]];  // -(R'p)_j
  for (std::size_t h = 0; h < net.m; ++h) {
    std::vector<double> row(net.k, 0.0);
    for (std::size_t j = 0; j < net.k; ++j) row[j] = net.A[h][j];
    lp.add_row(std::move(row), b[h]);
  }
  for (std::size_t i = 0; i < net.n; ++i) {
    std::vector<double> row(net.k, 0.0);
    for (std::size_t j = 0; j < net.k; ++j) row[j] = net.R[i][j];
    lp.add_row(std::move(row), d[i]);
  }
  return lp;
}

PeriodSolution solve_period(const ServiceNetwork& net, const std::vector<double>& b,
                            const std::vector<double>& d, double weight,
                            const SolverConfig& cfg) {
  LinearProgram lp = period_lp(net, b, d);
  LPSolution s = opt::solve_lp(lp, cfg);
  if (s.status != LPStatus::Optimal)
    throw std::runtime_error("second-stage LP failed: " +
                             std::string(opt::to_string(s.status)));
  PeriodSolution ps;
  ps.x = s.x;
  ps.y.assign(s.row_duals.begin(), s.row_duals.begin() + static_cast<long>(net.m));
  ps.z.assign(s.row_duals.begin() + static_cast<long>(net.m), s.row_duals.end());
  ps.weight = weight;
  double served = 0.0;
  for (std::size_t j = 0; j < net.k; ++j) served += net.p[net.class_of[j]] * s.x[j];
  double full = 0.0;
  for (std::size_t i = 0; i < net.n; ++i) full += net.p[i] * d[i];
  ps.abandonment = full - served;
  if (ps.abandonment < 0.0 && ps.abandonment > -1e-9) ps.abandonment = 0.0;
  return ps;
}

struct WeightedPeriods {
  // the generic problem behind both the fluid model and the SAA:
  // min_b  cbar'b + sum_tau u_tau p'(D_tau - R x_tau)
  const ServiceNetwork& net;
  std::vector<double> cbar;
  std::vector<const std::vector<double>*> demand;  // one vector<double> per period
  std::vector<double> weight;
};

// Generous valid staffing cap: capacity above the largest possible
// consumption of a pool is never used.
std::vector<double> staffing_caps(const WeightedPeriods& wp) {
  const ServiceNetwork& net = wp.net;
  std::vector<double> cap(net.m, 0.0);
  for (const auto* d : wp.demand) {
    for (std::size_t h = 0; h < net.m; ++h) {
      double use = 0.0;
      for (std::size_t j = 0; j < net.k; ++j)
        if (net.pool_of[j] == h) use += net.A[h][j] * (*d)[net.class_of[j]];
      cap[h] = std::max(cap[h], use);
    }
  }
  for (double& c : cap) c = c + 1.0;
  return cap;
}

StaffingSolution solve_joint(const WeightedPeriods& wp, TieBreak tie_break,
                             const SolverConfig& cfg) {
  const ServiceNetwork& net = wp.net;
  const std::size_t P = wp.demand.size();
  const std::size_t nv = net.m + P * net.k;
  auto xvar = [&](std::size_t tau, std::size_t j) { return net.m + tau * net.k + j; };

  LinearProgram lp(nv);
  double obj_const = 0.0;
  for (std::size_t h = 0; h < net.m; ++h) lp.objective[h] = wp.cbar[h];
  for (std::size_t tau = 0; tau < P; ++tau) {
    for (std::size_t j = 0; j < net.k; ++j)
      lp.objective[xvar(tau, j)] = -wp.weight[tau] * net.p[net.class_of[j]];
    for (std::size_t i = 0; i < net.n; ++i)
      obj_const += wp.weight[tau] * net.p[i] * (*wp.demand[tau])[i];
  }
  for (std::size_t tau = 0; tau < P; ++tau) {
    for (std::size_t h = 0; h < net.m; ++h) {
      std::vector<double> row(nv, 0.0);
      row[h] = -1.0;
      for (std::size_t j = 0; j < net.k; ++j) row[xvar(tau, j)] = net.A[h][j];
      lp.add_row(std::move(row), 0.0);
    }
    for (std::size_t i = 0; i < net.n; ++i) {
      std::vector<double> row(nv, 0.0);
      for (std::size_t j = 0; j < net.k; ++j) row[xvar(tau, j)] = net.R[i][j];
      lp.add_row(std::move(row), (*wp.demand[tau])[i]);
    }
  }

  LPSolution first = opt::solve_lp(lp, cfg);
  if (first.status != LPStatus::Optimal)
    throw std::runtime_error("staffing LP failed: " +
                             std::string(opt::to_string(first.status)));

  LPSolution primal = first;
  if (tie_break == TieBreak::MinNorm) {
    LinearProgram lp2 = lp;
    std::vector<double> budget = lp.objective;
    lp2.add_row(std::move(budget), first.objective + 1e-9 * (1.0 + std::fabs(first.objective)));
    for (std::size_t j = 0; j < nv; ++j) lp2.objective[j] = j < net.m ? 1.0 : 0.0;
    LPSolution second = opt::solve_lp(lp2, cfg);
    if (second.status == LPStatus::Optimal) {
      primal.x = second.x;
      primal.objective = 0.0;
      for (std::size_t j = 0; j < nv; ++j) primal.objective += lp.objective[j] * second.x[j];
    }
  }

  StaffingSolution out;
  out.method = "joint-lp";
  out.tie_break = tie_break == TieBreak::MinNorm ? "min-norm" : "none";
  out.b.assign(primal.x.begin(), primal.x.begin() + static_cast<long>(net.m));
  for (double& v : out.b)
    if (v < 0.0 && v > -1e-10) v = 0.0;
  out.periods.resize(P);
  double staffing = 0.0;
  for (std::size_t h = 0; h < net.m; ++h) staffing += wp.cbar[h] * out.b[h];
  out.staffing_cost = staffing;
  double aband = 0.0;
  for (std::size_t tau = 0; tau < P; ++tau) {
    PeriodSolution& ps = out.periods[tau];
    ps.weight = wp.weight[tau];
    ps.x.resize(net.k);
    for (std::size_t j = 0; j < net.k; ++j) ps.x[j] = primal.x[xvar(tau, j)];
    // duals from the first solve pair with any optimal primal
    std::size_t base = tau * (net.m + net.n);
    ps.y.assign(first.row_duals.begin() + static_cast<long>(base),
                first.row_duals.begin() + static_cast<long>(base + net.m));
    ps.z.assign(first.row_duals.begin() + static_cast<long>(base + net.m),
                first.row_duals.begin() + static_cast<long>(base + net.m + net.n));
    double lost = 0.0;
    for (std::size_t i = 0; i < net.n; ++i) lost += net.p[i] * (*wp.demand[tau])[i];
    for (std::size_t j = 0; j < net.k; ++j) lost -= net.p[net.class_of[j]] * ps.x[j];
    ps.abandonment = lost;
    aband += wp.weight[tau] * lost;
  }
  out.abandonment_cost = aband;
  out.objective = primal.objective + obj_const;
  return out;
}

StaffingSolution solve_benders(const WeightedPeriods& wp, TieBreak tie_break,
                               const SolverConfig& cfg) {
  const ServiceNetwork& net = wp.net;
  const std::size_t P = wp.demand.size();
  const std::vector<double> caps = staffing_caps(wp);

  // master variables: b (m), theta
  LinearProgram master(net.m + 1);
  for (std::size_t h = 0; h < net.m; ++h) {
    master.objective[h] = wp.cbar[h];
    master.upper[h] = caps[h];
  }
  master.objective[net.m] = 1.0;

  auto evaluate = [&](const std::vector<double>& b, std::vector<double>& grad) {
    grad.assign(net.m, 0.0);
    double total = 0.0;
    for (std::size_t tau = 0; tau < P; ++tau) {
      PeriodSolution ps = solve_period(net, b, *wp.demand[tau], wp.weight[tau], cfg);
      total += wp.weight[tau] * ps.abandonment;
      for (std::size_t h = 0; h < net.m; ++h)
        grad[h] -= wp.weight[tau] * ps.y[h];
    }
    return total;
  };

  auto add_cut = [&](LinearProgram& lp, const std::vector<double>& bhat, double fval,
                     const std::vector<double>& grad) {
    // theta >= f + g'(b - bhat)   <=>   g'b - theta <= g'bhat - f
    std::vector<double> row(net.m + 1, 0.0);
    double rhs = -fval;
    for (std::size_t h = 0; h < net.m; ++h) {
      row[h] = grad[h];
      rhs += grad[h] * bhat[h];
    }
    row[net.m] = -1.0;
    lp.add_row(std::move(row), rhs);
  };

  double best_ub = opt::kInf;
  std::vector<double> best_b(net.m, 0.0);
  double lb = -opt::kInf;
  std::vector<double> grad;
  const int max_rounds = 600;
  int round = 0;
  for (; round < max_rounds; ++round) {
    LPSolution ms = opt::solve_lp(master, cfg);
    if (ms.status != LPStatus::Optimal)
      throw std::runtime_error("benders master failed: " +
                               std::string(opt::to_string(ms.status)));
    lb = ms.objective;
    std::vector<double> bhat(ms.x.begin(), ms.x.begin() + static_cast<long>(net.m));
    double f = evaluate(bhat, grad);
    double staffing = 0.0;
    for (std::size_t h = 0; h < net.m; ++h) staffing += wp.cbar[h] * bhat[h];
    double ub = staffing + f;
    if (ub < best_ub) {
      best_ub = ub;
      best_b = bhat;
    }
    if (best_ub - lb <= 1e-9 * (1.0 + std::fabs(best_ub))) break;
    add_cut(master, bhat, f, grad);
  }
  if (round == max_rounds)
    throw std::runtime_error("benders did not converge");

  if (tie_break == TieBreak::MinNorm) {
    LinearProgram tied = master;
    std::vector<double> budget(net.m + 1, 0.0);
    for (std::size_t h = 0; h < net.m; ++h) budget[h] = wp.cbar[h];
    budget[net.m] = 1.0;
    tied.add_row(std::move(budget), best_ub + 1e-9 * (1.0 + std::fabs(best_ub)));
    for (std::size_t h = 0; h < net.m; ++h) tied.objective[h] = 1.0;
    tied.objective[net.m] = 0.0;
    for (int inner = 0; inner < 100; ++inner) {
      LPSolution ts = opt::solve_lp(tied, cfg);
      if (ts.status != LPStatus::Optimal) break;
      std::vector<double> bhat(ts.x.begin(), ts.x.begin() + static_cast<long>(net.m));
      double f = evaluate(bhat, grad);
      double staffing = 0.0;
      for (std::size_t h = 0; h < net.m; ++h) staffing += wp.cbar[h] * bhat[h];
      if (staffing + f <= best_ub + 1e-8 * (1.0 + std::fabs(best_ub))) {
        best_b = bhat;
        best_ub = std::min(best_ub, staffing + f);
        break;
      }
      add_cut(tied, bhat, f, grad);
    }
  }

  StaffingSolution out;
  out.method = "benders";
  out.tie_break = tie_break == TieBreak::MinNorm ? "min-norm" : "none";
  out.b = best_b;
  out.periods.reserve(P);
  double staffing = 0.0;
  for (std::size_t h = 0; h < net.m; ++h) staffing += wp.cbar[h] * best_b[h];
  out.staffing_cost = staffing;
  double aband = 0.0;
  for (std::size_t tau = 0; tau < P; ++tau) {
    PeriodSolution ps = solve_period(net, best_b, *wp.demand[tau], wp.weight[tau], cfg);
    aband += wp.weight[tau] * ps.abandonment;
    out.periods.push_back(std::move(ps));
  }
  out.abandonment_cost = aband;
  out.objective = staffing + aband;
  return out;
}

StaffingSolution solve_weighted(const WeightedPeriods& wp, TieBreak tie_break,
                                const SolverConfig& cfg) {
  const std::size_t P = wp.demand.size();
  const std::size_t rows = P * (wp.net.m + wp.net.n);
  const std::size_t vars = wp.net.m + P * wp.net.k;
  if (rows <= 600 && vars <= 1200) return solve_joint(wp, tie_break, cfg);
  return solve_benders(wp, tie_break, cfg);
}

}  // namespace

SecondStageResult second_stage(const ServiceNetwork& net, const std::vector<double>& b,
                               const std::vector<std::vector<double>>& demand_path,
                               const SolverConfig& cfg) {
  if (b.size() != net.m) throw std::invalid_argument("staffing vector has wrong length");
  for (double v : b)
    if (!(v >= 0.0)) throw std::invalid_argument("staffing must be nonnegative");
  SecondStageResult out;
  out.periods.reserve(demand_path.size());
  for (const auto& d : demand_path) {
    if (d.size() != net.n) throw std::invalid_argument("demand vector has wrong length");
    PeriodSolution ps = solve_period(net, b, d, 1.0, cfg);
    out.value += ps.abandonment;
    out.periods.push_back(std::move(ps));
  }
  return out;
}

StaffingSolution solve_fluid(const ServiceNetwork& net, const ArrivalRateProfile& lambda,
                             TieBreak tie_break, const SolverConfig& cfg) {
  lambda.check();
  if (lambda.n != net.n) throw std::invalid_argument("profile class count mismatch");
  WeightedPeriods wp{net, {}, {}, {}};
  wp.cbar.resize(net.m);
  for (std::size_t h = 0; h < net.m; ++h)
    wp.cbar[h] = net.c[h] * static_cast<double>(lambda.T);
  wp.demand.reserve(lambda.T);
  wp.weight.assign(lambda.T, 1.0);
  for (const auto& row : lambda.lambda) wp.demand.push_back(&row);
  return solve_weighted(wp, tie_break, cfg);
}

StaffingSolution solve_saa(const ServiceNetwork& net, const DemandScenarioSet& ds,
                           TieBreak tie_break, const SolverConfig& cfg) {
  ds.check();
  if (ds.n != net.n) throw std::invalid_argument("scenario class count mismatch");
  WeightedPeriods wp{net, {}, {}, {}};
  wp.cbar.resize(net.m);
  for (std::size_t h = 0; h < net.m; ++h)
    wp.cbar[h] = net.c[h] * static_cast<double>(ds.T);
  wp.demand.reserve(ds.Z * ds.T);
  wp.weight.reserve(ds.Z * ds.T);
  for (std::size_t z = 0; z < ds.Z; ++z)
    for (std::size_t t = 0; t < ds.T; ++t) {
      wp.demand.push_back(&ds.paths[z][t]);
      wp.weight.push_back(ds.weights[z]);
    }
  return solve_weighted(wp, tie_break, cfg);
}

double expected_cost(const ServiceNetwork& net, const std::vector<double>& b,
                     const DemandScenarioSet& ds, const SolverConfig& cfg) {
  double cost = 0.0;
  for (std::size_t h = 0; h < net.m; ++h)
    cost += net.c[h] * static_cast<double>(ds.T) * b[h];
  for (std::size_t z = 0; z < ds.Z; ++z)
    cost += ds.weights[z] * second_stage(net, b, ds.paths[z], cfg).value;
  return cost;
}

KKTReport verify_kkt(const ServiceNetwork& net, const ArrivalRateProfile& lambda,
                     const StaffingSolution& candidate, double tol) {
  KKTReport rep;
  lambda.check();
  if (candidate.b.size() != net.m || candidate.periods.size() != lambda.T) {
    rep.reason = "dimension mismatch";
    return rep;
  }
  for (const auto& ps : candidate.periods) {
    if (ps.y.size() != net.m || ps.z.size() != net.n || ps.x.size() != net.k) {
      rep.reason = "no certificate";
      return rep;
    }
  }
  rep.has_certificate = true;

  const std::size_t T = lambda.T;
  std::vector<double> cbar(net.m);
  for (std::size_t h = 0; h < net.m; ++h) cbar[h] = net.c[h] * static_cast<double>(T);

  double pf = 0.0, df = 0.0;
  for (std::size_t h = 0; h < net.m; ++h) pf = std::max(pf, -candidate.b[h]);
  std::vector<double> ysum(net.m, 0.0);
  for (std::size_t t = 0; t < T; ++t) {
    const PeriodSolution& ps = candidate.periods[t];
    for (std::size_t j = 0; j < net.k; ++j) pf = std::max(pf, -ps.x[j]);
    for (std::size_t h = 0; h < net.m; ++h) {
      double ax = 0.0;
      for (std::size_t j = 0; j < net.k; ++j) ax += net.A[h][j] * ps.x[j];
      pf = std::max(pf, ax - candidate.b[h]);
      df = std::max(df, -ps.y[h]);
      ysum[h] += ps.y[h];
    }
    for (std::size_t i = 0; i < net.n; ++i) {
      double rx = 0.0;
      for (std::size_t j = 0; j < net.k; ++j) rx += net.R[i][j] * ps.x[j];
      pf = std::max(pf, rx - lambda.lambda[t][i]);
      df = std::max(df, -ps.z[i]);
    }
    for (std::size_t j = 0; j < net.k; ++j) {
      // A'y + R'z >= R'p columnwise
      double lhs = net.A[net.pool_of[j]][j] * ps.y[net.pool_of[j]] + ps.z[net.class_of[j]];
      df = std::max(df, net.p[net.class_of[j]] - lhs);
    }
  }
  for (std::size_t h = 0; h < net.m; ++h) df = std::max(df, ysum[h] - cbar[h]);

  double cs_cap = 0.0, cs_dem = 0.0, cs_alloc = 0.0;
  for (std::size_t t = 0; t < T; ++t) {
    const PeriodSolution& ps = candidate.periods[t];
    double acc_cap = 0.0, acc_dem = 0.0, acc_alloc = 0.0;
    for (std::size_t h = 0; h < net.m; ++h) {
      double ax = 0.0;
      for (std::size_t j = 0; j < net.k; ++j) ax += net.A[h][j] * ps.x[j];
      acc_cap += ps.y[h] * (ax - candidate.b[h]);
    }
    for (std::size_t i = 0; i < net.n; ++i) {
      double rx = 0.0;
      for (std::size_t j = 0; j < net.k; ++j) rx += net.R[i][j] * ps.x[j];
      acc_dem += ps.z[i] * (rx - lambda.lambda[t][i]);
    }
    for (std::size_t j = 0; j < net.k; ++j) {
      double slack = net.A[net.pool_of[j]][j] * ps.y[net.pool_of[j]] +
                     ps.z[net.class_of[j]] - net.p[net.class_of[j]];
      acc_alloc += ps.x[j] * slack;
    }
    cs_cap = std::max(cs_cap, std::fabs(acc_cap));
    cs_dem = std::max(cs_dem, std::fabs(acc_dem));
    cs_alloc = std::max(cs_alloc, std::fabs(acc_alloc));
  }
  double cs_staff = 0.0;
  for (std::size_t h = 0; h < net.m; ++h)
    cs_staff += candidate.b[h] * (cbar[h] - ysum[h]);
  cs_staff = std::fabs(cs_staff);

  rep.primal_feas = pf;
  rep.dual_feas = df;
  rep.cs_capacity = cs_cap;
  rep.cs_demand = cs_dem;
  rep.cs_staffing = cs_staff;
  rep.cs_allocation = cs_alloc;
  rep.max_residual = std::max({pf, df, cs_cap, cs_dem, cs_staff, cs_alloc});
  rep.pass = rep.max_residual <= tol;
  if (!rep.pass) {
    if (cs_staff == rep.max_residual) rep.reason = "b'(cT - sum y_t) = 0 violated";
    else if (cs_alloc == rep.max_residual) rep.reason = "allocation reduced-cost slackness violated";
    else if (cs_cap == rep.max_residual) rep.reason = "capacity slackness violated";
    else if (cs_dem == rep.max_residual) rep.reason = "demand slackness violated";
    else if (df == rep.max_residual) rep.reason = "dual infeasible";
    else rep.reason = "primal infeasible";
  }
  return rep;
}

}  // namespace fluidcorr
