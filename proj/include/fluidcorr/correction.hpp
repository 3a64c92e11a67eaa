#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fluidcorr/existence.hpp"
#include "fluidcorr/twostage.hpp"

namespace fluidcorr {

enum class CorrectionOutcome { Universal, DistributionDependent, Nonexistent };

const char* to_string(CorrectionOutcome o);

enum class PoolsMode { All, FromSAA };  // which pools the universal test covers

struct CorrectionOptions {
  PoolsMode pools_mode = PoolsMode::All;  // conservative default
  bool smooth = false;
  opt::SolverConfig solver;
};

// Re-solve verification: feed lambda-hat back into the fluid model and price
// the resulting staffing under the training distribution.
struct ResolveCheck {
  bool pass = false;
  double saa_objective = 0.0;      // optimum of the sampled problem
  double resolve_objective = 0.0;  // cost of b*(lambda-hat) under the same samples
  double gap = 0.0;
  std::vector<double> b_resolved;
};

struct CorrectionResult {
  CorrectionOutcome outcome = CorrectionOutcome::Nonexistent;
  std::optional<ArrivalRateProfile> lambda_hat;
  StaffingSolution b_star;
  std::optional<CertificateY> certificate;             // step-3 route
  std::vector<std::pair<std::size_t, std::size_t>> chosen_columns;  // step-1: (pool, activity)
  ResolveCheck check;
  std::string note;
};

// Step 1: constant profile from the classwise cost-minimal columns of the
// staffed pools; ties broken by smallest activity index.
ArrivalRateProfile construct_universal_lambda(
    const ServiceNetwork& net, const std::vector<double>& b_star, std::size_t T,
    std::vector<std::pair<std::size_t, std::size_t>>* chosen = nullptr);

// Step 3: per-period profile from a membership certificate.
ArrivalRateProfile construct_lambda_from_certificate(const ServiceNetwork& net,
                                                     const std::vector<double>& b_star,
                                                     const CertificateY& cert);

// Algorithm: SAA staffing, universal test, membership test, construction,
// and the re-solve check against the sampled distribution.
CorrectionResult run_algorithm1(const ServiceNetwork& net, const DemandScenarioSet& ds,
                                const CorrectionOptions& opts = {});

}  // namespace fluidcorr
