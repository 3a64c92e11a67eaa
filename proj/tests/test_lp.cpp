#include <doctest.h>

#include <cmath>

#include "fluidcorr/lp.hpp"
#include "fluidcorr/rng.hpp"

using namespace fluidcorr;
using opt::LinearProgram;
using opt::LPSolution;
using opt::LPStatus;

TEST_CASE("min x with x >= 0 sits at zero") {
  LinearProgram lp(1);
  lp.objective[0] = 1.0;
  auto s = opt::solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(0.0));
  CHECK(s.objective == doctest::Approx(0.0));
}

TEST_CASE("single binding constraint carries dual 1") {
  LinearProgram lp(1);
  lp.objective[0] = -1.0;
  lp.add_row({1.0}, 5.0);
  auto s = opt::solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(5.0));
  CHECK(s.row_duals[0] == doctest::Approx(1.0));
}

TEST_CASE("statuses: unbounded and infeasible are told apart") {
  LinearProgram unb(1);
  unb.objective[0] = -1.0;
  CHECK(opt::solve_lp(unb).status == LPStatus::Unbounded);

  LinearProgram inf(1);
  inf.add_row({1.0}, -1.0);  // x <= -1 with x >= 0
  CHECK(opt::solve_lp(inf).status == LPStatus::Infeasible);
}

TEST_CASE("equality via opposing rows and negative rhs") {
  // min x1 + x2 s.t. x1 + x2 = 2, x1 - x2 <= 0
  LinearProgram lp(2);
  lp.objective = {1.0, 3.0};
  lp.add_row({1.0, 1.0}, 2.0);
  lp.add_row({-1.0, -1.0}, -2.0);
  auto s = opt::solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] == doctest::Approx(2.0));
  CHECK(s.x[1] == doctest::Approx(0.0));
  CHECK(s.objective == doctest::Approx(2.0));
}

TEST_CASE("variable bounds are honored") {
  LinearProgram lp(2);
  lp.objective = {-1.0, -1.0};
  lp.lower = {0.5, 0.0};
  lp.upper = {2.0, 1.5};
  lp.add_row({1.0, 1.0}, 3.0);
  auto s = opt::solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.x[0] + s.x[1] <= 3.0 + 1e-9);
  CHECK(s.objective == doctest::Approx(-3.0));
}

TEST_CASE("degenerate problem still terminates") {
  // many redundant rows through the same vertex
  LinearProgram lp(2);
  lp.objective = {-1.0, -2.0};
  for (int i = 0; i < 12; ++i) lp.add_row({1.0, 1.0}, 1.0);
  lp.add_row({1.0, 0.0}, 1.0);
  lp.add_row({0.0, 1.0}, 1.0);
  auto s = opt::solve_lp(lp);
  REQUIRE(s.status == LPStatus::Optimal);
  CHECK(s.objective == doctest::Approx(-2.0));
}

namespace {

// bounded feasible random instance: box plus random <= rows with rhs >= 0
LinearProgram random_bounded(Rng& rng) {
  std::size_t n = 1 + rng.next_u64() % 6;
  std::size_t rows = 1 + rng.next_u64() % 8;
  LinearProgram lp(n);
  for (auto& c : lp.objective) c = rng.uniform(-3.0, 3.0);
  for (std::size_t j = 0; j < n; ++j) lp.upper[j] = rng.uniform(1.0, 10.0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row(n);
    for (double& a : row) a = rng.uniform(-2.0, 2.0);
    lp.add_row(std::move(row), rng.uniform(0.5, 8.0));
  }
  return lp;
}

double dual_objective(const LinearProgram& lp, const LPSolution& s) {
  // for x in [0, u]: dual obj = -sum_i mu_i h_i + sum_j min(0, rc_j) u_j
  // with rc the reduced cost c_j + sum_i mu_i G_ij
  double v = 0.0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) v -= s.row_duals[i] * lp.rhs[i];
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    double rc = lp.objective[j];
    for (std::size_t i = 0; i < lp.rows.size(); ++i)
      rc += s.row_duals[i] * lp.rows[i][j];
    if (rc < 0.0 && lp.upper[j] < opt::kInf) v += rc * lp.upper[j];
  }
  return v;
}

}  // namespace

TEST_CASE("strong duality and complementary slackness on random instances") {
  Rng rng(1234);
  for (int trial = 0; trial < 120; ++trial) {
    LinearProgram lp = random_bounded(rng);
    auto s = opt::solve_lp(lp);
    REQUIRE(s.status == LPStatus::Optimal);
    CHECK(opt::lp_violation(lp, s.x) <= 1e-8);
    // |primal - dual| <= 1e-7 (1 + |obj|)
    double dual = dual_objective(lp, s);
    CHECK(std::fabs(s.objective - dual) <= 1e-7 * (1.0 + std::fabs(s.objective)));
    // complementary slackness on rows
    for (std::size_t i = 0; i < lp.rows.size(); ++i) {
      double lhs = 0.0;
      for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.rows[i][j] * s.x[j];
      CHECK(std::fabs(s.row_duals[i] * (lhs - lp.rhs[i])) <= 1e-6);
    }
  }
}

TEST_CASE("objective scaling is covariant, argmin is preserved") {
  Rng rng(77);
  for (int trial = 0; trial < 40; ++trial) {
    LinearProgram lp = random_bounded(rng);
    auto s1 = opt::solve_lp(lp);
    REQUIRE(s1.status == LPStatus::Optimal);
    double alpha = rng.uniform(0.5, 4.0);
    LinearProgram scaled = lp;
    for (double& c : scaled.objective) c *= alpha;
    auto s2 = opt::solve_lp(scaled);
    REQUIRE(s2.status == LPStatus::Optimal);
    CHECK(s2.objective == doctest::Approx(alpha * s1.objective).epsilon(1e-7));
    // argmin membership: the scaled solution must be optimal for the original
    double v = 0.0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) v += lp.objective[j] * s2.x[j];
    CHECK(v <= s1.objective + 1e-7 * (1.0 + std::fabs(s1.objective)));
  }
}
