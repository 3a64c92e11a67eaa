#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fluidcorr/rng.hpp"

namespace fluidcorr {

// Finite-support joint demand: Z weighted paths of T periods x n classes.
// Immutable after construction.
struct DemandScenarioSet {
  std::size_t Z = 0;
  std::size_t T = 0;
  std::size_t n = 0;
  std::vector<double> weights;                          // positive, sum to 1
  std::vector<std::vector<std::vector<double>>> paths;  // [z][t][i]

  void check() const;  // throws on invariant violation
  DemandScenarioSet restrict_classes(const std::vector<std::size_t>& classes) const;
  // Slice periods [first, first+count) of every scenario.
  DemandScenarioSet slice_periods(std::size_t first, std::size_t count) const;
};

DemandScenarioSet make_scenarios(std::vector<std::vector<std::vector<double>>> paths,
                                 std::vector<double> weights = {});

// Equal-weight duplication of the scenario paths, flattened over (scenario,
// period) into a single deterministic sequence.
struct ExpandedDemandSequence {
  std::size_t taus = 0;                      // T * Z~
  std::size_t z_tilde = 0;                   // duplication count
  std::vector<std::vector<double>> demands;  // [tau][i]
  double scale = 0.0;                        // Z~ * T
};

// Clears weight denominators up to max_denominator; weights further than
// 1e-9 from any admissible rational are rejected with advice to resample.
ExpandedDemandSequence expand(const DemandScenarioSet& ds,
                              std::uint64_t max_denominator = 1000000);

// Bootstrap to equal weights (the documented fallback for long-denominator
// weights). Draws z_prime scenarios proportional to the original weights.
DemandScenarioSet resample_equal_weights(const DemandScenarioSet& ds,
                                         std::size_t z_prime, Rng rng);

// Pooled per-class samples across all periods and scenarios; quantile is the
// lower (left-continuous) empirical inverse.
class EmpiricalMixtureCDF {
 public:
  EmpiricalMixtureCDF(std::vector<double> samples, std::vector<double> weights);
  double quantile(double q) const;
  double cdf(double x) const;  // weighted fraction of samples <= x
  double min() const { return samples_.front(); }
  double max() const { return samples_.back(); }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }

 private:
  std::vector<double> samples_;  // sorted
  std::vector<double> cum_;      // cumulative weights, normalized to 1
};

EmpiricalMixtureCDF empirical_mixture_cdf(const DemandScenarioSet& ds,
                                          std::size_t customer_class);

// CSV schema: header "scenario,period,class,count"; one scenario per distinct
// id (ordered by first appearance), equal weights, complete T x n grids.
DemandScenarioSet load_csv(const std::string& path);
void save_csv(const DemandScenarioSet& ds, const std::string& path);

// One scenario per week of T = 168 hourly periods ordered by (day, hour).
// Demand for (day d, hour t, class i) ~ Poisson(base[0][i][t] * trend^d):
// the Monday slice of base_rates scaled by the day-over-day trend.
DemandScenarioSet generate_synthetic_weeks(
    const std::vector<std::vector<std::vector<double>>>& base_rates,  // [7][n][24]
    double trend_factor, std::size_t num_weeks, std::uint64_t seed);

}  // namespace fluidcorr
