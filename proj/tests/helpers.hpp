#pragma once

#include <cstdint>
#include <vector>

#include "fluidcorr/demand.hpp"
#include "fluidcorr/network.hpp"
#include "fluidcorr/rng.hpp"

namespace testutil {

using fluidcorr::DemandScenarioSet;
using fluidcorr::ServiceNetwork;

// The 2-class / 3-pool network with the flexible middle pool (c = (4,6,5),
// p = (30,32), unit consumption). Activities: (c1,s1), (c1,s2), (c2,s2), (c2,s3).
inline ServiceNetwork flex_pool_net() {
  return fluidcorr::make_network(
      2, 3, 4,
      {{1, 1, 0, 0}, {0, 0, 1, 1}},
      {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}},
      {4, 6, 5}, {30, 32});
}

// The 6-class / 7-pool / 9-activity network of the experiments, with
// per-period costs c = cbar / T for a chosen horizon divisor.
inline ServiceNetwork week_net(double cost_divisor = 1.0) {
  std::vector<double> cbar = {50, 60, 40, 70, 60, 80, 70};
  for (double& v : cbar) v /= cost_divisor;
  return fluidcorr::make_network(
      6, 7, 9,
      {{1, 0, 0, 0, 0, 0, 0, 0, 0},
       {0, 1, 1, 0, 0, 0, 0, 0, 0},
       {0, 0, 0, 1, 0, 0, 0, 0, 0},
       {0, 0, 0, 0, 1, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 1, 1, 0, 0},
       {0, 0, 0, 0, 0, 0, 0, 1, 1}},
      {{1, 0, 0, 0, 0, 0, 0, 0, 0},
       {0, 1, 0, 0, 0, 0, 0, 0, 0},
       {0, 0, 1, 0, 0, 0, 0, 0, 0},
       {0, 0, 0, 1, 1, 0, 0, 0, 0},
       {0, 0, 0, 0, 0, 1, 0, 0, 0},
       {0, 0, 0, 0, 0, 0, 1, 1, 0},
       {0, 0, 0, 0, 0, 0, 0, 0, 1}},
      cbar, {140, 135, 130, 120, 150, 175});
}

// Single class, single pool, unit matrices.
inline ServiceNetwork scalar_net(double c, double p) {
  return fluidcorr::make_network(1, 1, 1, {{1}}, {{1}}, {c}, {p});
}

// Random connected-enough network: every class reachable, every pool used.
inline ServiceNetwork random_net(fluidcorr::Rng& rng, std::size_t max_n = 4,
                                 std::size_t max_m = 4, bool unit_a = false) {
  std::size_t n = 1 + rng.next_u64() % max_n;
  std::size_t m = 1 + rng.next_u64() % max_m;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    edges.emplace_back(i, rng.next_u64() % m);  // class coverage
  for (std::size_t h = 0; h < m; ++h)
    edges.emplace_back(rng.next_u64() % n, h);  // pool coverage
  std::size_t extra = rng.next_u64() % (n * m / 2 + 1);
  for (std::size_t e = 0; e < extra; ++e)
    edges.emplace_back(rng.next_u64() % n, rng.next_u64() % m);
  std::size_t k = edges.size();
  std::vector<std::vector<double>> R(n, std::vector<double>(k, 0.0));
  std::vector<std::vector<double>> A(m, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) {
    R[edges[j].first][j] = 1.0;
    A[edges[j].second][j] = unit_a ? 1.0 : rng.uniform(0.5, 2.0);
  }
  std::vector<double> c(m), p(n);
  for (double& v : c) v = rng.uniform(1.0, 8.0);
  for (double& v : p) v = rng.uniform(10.0, 40.0);
  return fluidcorr::make_network(n, m, k, std::move(R), std::move(A), std::move(c),
                                 std::move(p));
}

inline DemandScenarioSet random_scenarios(fluidcorr::Rng& rng, std::size_t n,
                                          std::size_t max_z = 5, std::size_t max_t = 3,
                                          bool rational_weights = false) {
  std::size_t Z = 1 + rng.next_u64() % max_z;
  std::size_t T = 1 + rng.next_u64() % max_t;
  std::vector<std::vector<std::vector<double>>> paths;
  for (std::size_t z = 0; z < Z; ++z) {
    std::vector<std::vector<double>> path(T, std::vector<double>(n, 0.0));
    for (auto& row : path)
      for (double& v : row) v = rng.uniform(0.0, 10.0);
    paths.push_back(std::move(path));
  }
  std::vector<double> w;
  if (rational_weights) {
    std::vector<std::uint64_t> num(Z);
    std::uint64_t total = 0;
    for (auto& v : num) {
      v = 1 + rng.next_u64() % 6;
      total += v;
    }
    for (std::size_t z = 0; z < Z; ++z)
      w.push_back(static_cast<double>(num[z]) / static_cast<double>(total));
  }
  return fluidcorr::make_scenarios(std::move(paths), std::move(w));
}

}  // namespace testutil
