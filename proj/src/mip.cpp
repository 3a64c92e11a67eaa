#include "fluidcorr/mip.hpp"

#include <algorithm>
#include <cmath>

namespace fluidcorr::opt {

const char* to_string(MIPStatus s) {
  switch (s) {
    case MIPStatus::Feasible: return "feasible";
    case MIPStatus::Infeasible: return "infeasible";
    case MIPStatus::LimitExceeded: return "limit-exceeded";
    case MIPStatus::NumericalFailure: return "numerical-failure";
  }
  return "?";
}

namespace {

constexpr double kIntTol = 1e-7;

struct Node {
  std::vector<signed char> fix;  // -1 free, 0, 1 per binary
};

}  // namespace

MIPResult solve_mip_feasibility(const MIPFeasibilityProblem& mp,
                                const SolverConfig& cfg) {
  MIPResult result;
  const std::size_t nb = mp.binary_vars.size();
  if (nb > mp.binary_limit) {
    result.status = MIPStatus::LimitExceeded;
    return result;
  }

  LinearProgram base = mp.lp;
  for (std::size_t v : mp.binary_vars) {
    base.lower[v] = std::max(base.lower[v], 0.0);
    base.upper[v] = std::min(base.upper[v], 1.0);
  }

  auto solve_with = [&](const std::vector<signed char>& fix) -> LPSolution {
    LinearProgram node = base;
    for (std::size_t i = 0; i < nb; ++i) {
      if (fix[i] >= 0) {
        node.lower[mp.binary_vars[i]] = fix[i];
        node.upper[mp.binary_vars[i]] = fix[i];
      }
    }
    return solve_lp(node, cfg);
  };

  bool have_incumbent = false;
  double incumbent_obj = kInf;
  std::vector<double> incumbent_x;

  auto accept = [&](const LPSolution& s) {
    if (!have_incumbent || s.objective < incumbent_obj - 1e-12) {
      have_incumbent = true;
      incumbent_obj = s.objective;
      incumbent_x = s.x;
    }
  };

  // user-supplied assignments first
  for (const auto& hint : mp.hints) {
    if (hint.size() != nb) continue;
    std::vector<signed char> fix(nb);
    for (std::size_t i = 0; i < nb; ++i) fix[i] = static_cast<signed char>(hint[i] ? 1 : 0);
    LPSolution s = solve_with(fix);
    if (s.status == LPStatus::Optimal) {
      accept(s);
      if (!mp.has_objective) {
        result.status = MIPStatus::Feasible;
        result.x = s.x;
        result.objective = s.objective;
        return result;
      }
    }
  }

  auto fractional = [&](const LPSolution& s, std::size_t& which) -> bool {
    double worst = kIntTol;
    which = nb;
    for (std::size_t i = 0; i < nb; ++i) {
      double v = s.x[mp.binary_vars[i]];
      double frac = std::fabs(v - std::round(v));
      if (frac > worst) {
        worst = frac;
        which = i;
      }
    }
    return which != nb;
  };

  const long node_limit = 5'000'000;
  bool numerical_trouble = false;
  std::vector<Node> stack;
  stack.push_back(Node{std::vector<signed char>(nb, -1)});
  long probe_clock = 0;

  while (!stack.empty()) {
    if (++result.nodes > node_limit) {
      result.status = have_incumbent ? MIPStatus::Feasible : MIPStatus::LimitExceeded;
      result.x = incumbent_x;
      result.objective = incumbent_obj;
      return result;
    }
    Node node = std::move(stack.back());
    stack.pop_back();

    LPSolution relax = solve_with(node.fix);
    if (relax.status == LPStatus::Infeasible) continue;
    if (relax.status != LPStatus::Optimal) {
      numerical_trouble = true;
      continue;
    }
    if (mp.has_objective && have_incumbent &&
        relax.objective >= incumbent_obj - cfg.tol_gap * (1.0 + std::fabs(incumbent_obj)))
      continue;

    std::size_t branch_on;
    if (!fractional(relax, branch_on)) {
      accept(relax);
      if (!mp.has_objective) {
        result.status = MIPStatus::Feasible;
        result.x = relax.x;
        result.objective = relax.objective;
        return result;
      }
      continue;
    }

    // rounding probe: fix everything to the nearest integer and recheck
    if (probe_clock++ % 8 == 0) {
      std::vector<signed char> rounded(nb);
      for (std::size_t i = 0; i < nb; ++i)
        rounded[i] = node.fix[i] >= 0
                         ? node.fix[i]
                         : static_cast<signed char>(relax.x[mp.binary_vars[i]] >= 0.5 ? 1 : 0);
      LPSolution probe = solve_with(rounded);
      if (probe.status == LPStatus::Optimal) {
        accept(probe);
        if (!mp.has_objective) {
          result.status = MIPStatus::Feasible;
          result.x = probe.x;
          result.objective = probe.objective;
          return result;
        }
      }
    }

    double v = relax.x[mp.binary_vars[branch_on]];
    signed char first = v >= 0.5 ? 1 : 0;
    Node far = node;
    far.fix[branch_on] = static_cast<signed char>(1 - first);
    Node near = std::move(node);
    near.fix[branch_on] = first;
    stack.push_back(std::move(far));   // explored second
    stack.push_back(std::move(near));  // explored first (DFS dive)
  }

  if (have_incumbent) {
    result.status = MIPStatus::Feasible;
    result.x = incumbent_x;
    result.objective = incumbent_obj;
  } else {
    result.status =
        numerical_trouble ? MIPStatus::NumericalFailure : MIPStatus::Infeasible;
  }
  return result;
}

}  // namespace fluidcorr::opt
