#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fluidcorr/demand.hpp"
#include "fluidcorr/forecast.hpp"
#include "fluidcorr/network.hpp"
#include "fluidcorr/twostage.hpp"

namespace fluidcorr {

// Cost of a fixed staffing plan priced on held-out scenarios: staffing part
// c'b T plus the mean second-stage abandonment cost.
struct EvaluationEntry {
  double staffing_cost = 0.0;
  double mean_abandonment = 0.0;
  double total = 0.0;
  std::vector<double> per_scenario;  // abandonment per scenario
};

EvaluationEntry evaluate(const ServiceNetwork& net, const std::vector<double>& b,
                         const DemandScenarioSet& test_ds,
                         const opt::SolverConfig& cfg = {});

struct ExperimentConfig {
  std::vector<std::vector<double>> monday_rates;  // n x 24 base hourly rates
  double trend_factor = 1.1;
  std::vector<std::size_t> train_sizes = {5, 10, 20};
  std::size_t test_samples = 30;
  std::size_t trials = 5;
  std::uint64_t seed = 20240601;
  ForecastModel model = ForecastModel::SeasonalNaive24;
  bool smooth = false;
};

struct ExperimentRow {
  std::size_t trial = 0;
  std::size_t n_train = 0;
  std::string method;  // "benchmark" | "corrected"
  double staffing_cost = 0.0;
  double mean_abandonment = 0.0;
  double total = 0.0;
  std::vector<double> b;
  std::size_t flagged_components = 0;
};

struct ExperimentAggregate {
  std::size_t n_train = 0;
  std::string method;
  double mean_total = 0.0;
  double stderr_total = 0.0;
  std::vector<double> mean_b;
};

struct ExperimentReport {
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentAggregate> aggregates;
};

// Predict-then-optimize comparison on synthetic weekly demand: the averaged
// profile pipeline against the corrected pipeline (quantile capacities on
// decomposable components, certificate-based weekly profile plus forecast
// on coupled components), both priced on a common per-trial test set of
// next-Monday samples.
ExperimentReport run_experiment(const ServiceNetwork& net, const ExperimentConfig& config,
                                const opt::SolverConfig& cfg = {});

std::string experiment_costs_csv(const ExperimentReport& report);
std::string experiment_staffing_csv(const ExperimentReport& report, std::size_t m);

}  // namespace fluidcorr
