#include <doctest.h>

#include <cmath>

#include "fluidcorr/mip.hpp"
#include "fluidcorr/rng.hpp"

using namespace fluidcorr;
using opt::LinearProgram;
using opt::MIPFeasibilityProblem;
using opt::MIPStatus;

TEST_CASE("unconstrained binary is feasible") {
  MIPFeasibilityProblem mp;
  mp.lp = LinearProgram(1);
  mp.binary_vars = {0};
  auto r = opt::solve_mip_feasibility(mp);
  CHECK(r.status == MIPStatus::Feasible);
}

TEST_CASE("conflicting bounds on a binary are infeasible") {
  MIPFeasibilityProblem mp;
  mp.lp = LinearProgram(1);
  mp.lp.add_row({-1.0}, -0.5);  // x >= 0.5
  mp.lp.add_row({1.0}, 0.4);    // x <= 0.4
  mp.binary_vars = {0};
  auto r = opt::solve_mip_feasibility(mp);
  CHECK(r.status == MIPStatus::Infeasible);
}

TEST_CASE("integrality actually binds: fractional-only row") {
  // x1 + x2 = 1.5 has fractional solutions only
  MIPFeasibilityProblem mp;
  mp.lp = LinearProgram(2);
  mp.lp.add_row({1.0, 1.0}, 1.5);
  mp.lp.add_row({-1.0, -1.0}, -1.5);
  mp.binary_vars = {0, 1};
  CHECK(opt::solve_mip_feasibility(mp).status == MIPStatus::Infeasible);
}

TEST_CASE("binary limit reported") {
  MIPFeasibilityProblem mp;
  mp.lp = LinearProgram(3);
  mp.binary_vars = {0, 1, 2};
  mp.binary_limit = 2;
  CHECK(opt::solve_mip_feasibility(mp).status == MIPStatus::LimitExceeded);
}

TEST_CASE("tie-break objective reaches the optimum") {
  // min x1 + 2 x2 s.t. x1 + x2 >= 1, binaries
  MIPFeasibilityProblem mp;
  mp.lp = LinearProgram(2);
  mp.lp.objective = {1.0, 2.0};
  mp.lp.add_row({-1.0, -1.0}, -1.0);
  mp.binary_vars = {0, 1};
  mp.has_objective = true;
  auto r = opt::solve_mip_feasibility(mp);
  REQUIRE(r.status == MIPStatus::Feasible);
  CHECK(r.objective == doctest::Approx(1.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(0.0));
}

namespace {

MIPFeasibilityProblem random_instance(Rng& rng, std::size_t nbin) {
  std::size_t ncont = rng.next_u64() % 3;
  MIPFeasibilityProblem mp;
  mp.lp = LinearProgram(nbin + ncont);
  for (std::size_t j = 0; j < nbin; ++j) mp.binary_vars.push_back(j);
  for (std::size_t j = nbin; j < nbin + ncont; ++j) mp.lp.upper[j] = 3.0;
  std::size_t rows = 1 + rng.next_u64() % 6;
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row(nbin + ncont);
    for (double& a : row) a = std::floor(rng.uniform(-2.0, 3.0));
    mp.lp.add_row(std::move(row), std::floor(rng.uniform(-1.0, 4.0)));
  }
  return mp;
}

bool exhaustive_feasible(const MIPFeasibilityProblem& mp) {
  const std::size_t nbin = mp.binary_vars.size();
  for (std::uint64_t mask = 0; mask < (1ull << nbin); ++mask) {
    LinearProgram lp = mp.lp;
    for (std::size_t j = 0; j < nbin; ++j) {
      double v = (mask >> j) & 1 ? 1.0 : 0.0;
      lp.lower[mp.binary_vars[j]] = v;
      lp.upper[mp.binary_vars[j]] = v;
    }
    if (opt::solve_lp(lp).status == opt::LPStatus::Optimal) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("branch and bound agrees with exhaustive enumeration") {
  Rng rng(4242);
  int feasible_seen = 0, infeasible_seen = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t nbin = 1 + rng.next_u64() % 12;
    MIPFeasibilityProblem mp = random_instance(rng, nbin);
    bool expected = exhaustive_feasible(mp);
    auto r = opt::solve_mip_feasibility(mp);
    REQUIRE((r.status == MIPStatus::Feasible || r.status == MIPStatus::Infeasible));
    CHECK((r.status == MIPStatus::Feasible) == expected);
    if (expected) {
      ++feasible_seen;
      // returned assignment satisfies every constraint and integrality
      CHECK(opt::lp_violation(mp.lp, r.x) <= 1e-7);
      for (std::size_t j : mp.binary_vars)
        CHECK(std::fabs(r.x[j] - std::round(r.x[j])) <= 1e-7);
    } else {
      ++infeasible_seen;
    }
  }
  CHECK(feasible_seen > 10);
  CHECK(infeasible_seen > 10);
}
