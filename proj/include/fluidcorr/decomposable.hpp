#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fluidcorr/correction.hpp"
#include "fluidcorr/demand.hpp"
#include "fluidcorr/network.hpp"

namespace fluidcorr {

enum class ComponentKind {
  Case1SingleSingle,
  Case2ManySingle,       // reduced to case 1 by dominance pruning
  SingleServerMultiCustomer,
  General,
};

const char* to_string(ComponentKind k);

struct ComponentRule {
  NetworkComponent component;
  ComponentKind kind = ComponentKind::General;
  std::vector<std::size_t> pruned_pools;  // dominated, staffed at 0
  std::size_t pool = 0;                   // h* for case 1/2
  std::size_t activity = 0;               // j* for case 1/2
};

ComponentRule classify_component(const ServiceNetwork& net, const NetworkComponent& comp);

struct QuantileResult {
  double b = 0.0;            // capacity on the kept pool
  double lambda = 0.0;       // constant corrected rate for the class
  double quantile_prob = 0.0;
};

// Case 1 rule: b* = A F_mix^{-1}(1 - cA/p) on the kept activity, or 0 when
// the effective cost reaches the penalty.
QuantileResult case1_quantile(const ServiceNetwork& net, const ComponentRule& rule,
                              const DemandScenarioSet& ds);

// First-order condition of the two-customer single-pool problem, solved by
// bisection on the empirical marginal value (demands treated as independent;
// the higher-price customer is served first). Requires p1 >= p2 > 0, c > 0.
double two_customer_newsvendor(double p1, double p2, double c,
                               const std::vector<double>& f1_samples,
                               const std::vector<double>& f2_samples);

// Same equation with explicit CDFs; the integral term is evaluated by
// midpoint quadrature of dF1 on [0, hi].
double two_customer_newsvendor_continuous(double p1, double p2, double c,
                                          const std::function<double(double)>& F1,
                                          const std::function<double(double)>& F2,
                                          double hi, std::size_t steps = 20000);

struct ComponentPlan {
  ComponentRule rule;
  std::vector<double> b_local;       // per component pool
  std::vector<std::vector<double>> lambda_local;  // T x local classes
  std::string method;                // quantile | newsvendor2 | algorithm1 | saa-flagged
  bool flagged = false;              // general component without a correction
};

struct HybridResult {
  std::vector<double> b;         // full network
  ArrivalRateProfile lambda_hat; // full network, T x n
  std::vector<ComponentPlan> components;
};

// Component-wise solve: quantile rules where the structure allows them,
// the data-guided construction on coupled components.
HybridResult hybrid_solve(const ServiceNetwork& net, const DemandScenarioSet& ds,
                          const CorrectionOptions& opts = {});

}  // namespace fluidcorr
