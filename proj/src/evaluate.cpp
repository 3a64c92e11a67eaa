#include "fluidcorr/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>

#include "fluidcorr/decomposable.hpp"

namespace fluidcorr {

EvaluationEntry evaluate(const ServiceNetwork& net, const std::vector<double>& b,
                         const DemandScenarioSet& test_ds, const opt::SolverConfig& cfg) {
  test_ds.check();
  if (b.size() != net.m) throw std::invalid_argument("staffing vector has wrong length");
  EvaluationEntry e;
  for (std::size_t h = 0; h < net.m; ++h)
    e.staffing_cost += net.c[h] * static_cast<double>(test_ds.T) * b[h];
  e.per_scenario.reserve(test_ds.Z);
  for (std::size_t z = 0; z < test_ds.Z; ++z) {
    double v = second_stage(net, b, test_ds.paths[z], cfg).value;
    e.per_scenario.push_back(v);
    e.mean_abandonment += test_ds.weights[z] * v;
  }
  e.total = e.staffing_cost + e.mean_abandonment;
  return e;
}

namespace {

// 30 draws of the Monday after the training window; in the trending world
// its rates are the Monday base scaled by trend^7.
DemandScenarioSet make_test_mondays(const ExperimentConfig& config, Rng rng) {
  const std::size_t n = config.monday_rates.size();
  double scale = std::pow(config.trend_factor, 7.0);
  std::vector<std::vector<std::vector<double>>> paths;
  paths.reserve(config.test_samples);
  for (std::size_t s = 0; s < config.test_samples; ++s) {
    Rng r = rng.split(0x7e57ULL, s);
    std::vector<std::vector<double>> path(24, std::vector<double>(n, 0.0));
    for (std::size_t t = 0; t < 24; ++t)
      for (std::size_t i = 0; i < n; ++i)
        path[t][i] = static_cast<double>(r.poisson(config.monday_rates[i][t] * scale));
    paths.push_back(std::move(path));
  }
  return make_scenarios(std::move(paths));
}

ArrivalRateProfile profile_from_rates(const std::vector<std::vector<double>>& rates24xn) {
  ArrivalRateProfile p;
  p.T = rates24xn.size();
  p.n = p.T ? rates24xn[0].size() : 0;
  p.lambda = rates24xn;
  p.check();
  return p;
}

}  // namespace

ExperimentReport run_experiment(const ServiceNetwork& net, const ExperimentConfig& config,
                                const opt::SolverConfig& cfg) {
  if (config.monday_rates.size() != net.n)
    throw std::invalid_argument("monday_rates must have one row per customer class");
  for (const auto& row : config.monday_rates)
    if (row.size() != 24)
      throw std::invalid_argument("monday_rates rows must have 24 hourly entries");

  std::vector<std::vector<std::vector<double>>> base7(
      7, config.monday_rates);  // generator scales the Monday slice itself

  ExperimentReport report;
  Rng master(config.seed);

  const auto comps = decompose(net);

  for (std::size_t trial = 0; trial < config.trials; ++trial) {
    Rng trial_rng = master.split(0x7217aULL, trial);
    DemandScenarioSet test = make_test_mondays(config, trial_rng.split(1));
    const std::uint64_t train_seed = trial_rng.split(2).next_u64();

    for (std::size_t n_train : config.train_sizes) {
      // per-week substreams make the training sets nested across sizes
      DemandScenarioSet train = generate_synthetic_weeks(
          base7, config.trend_factor, n_train, train_seed);

      // benchmark: averaged weekly profile -> next-day forecast -> fluid
      WeeklyProfile avg = average_weekly_profile(train);
      auto fc = forecast_next_day(avg, config.model);
      StaffingSolution bench =
          solve_fluid(net, profile_from_rates(fc), TieBreak::MinNorm, cfg);
      EvaluationEntry bench_eval = evaluate(net, bench.b, test, cfg);
      report.rows.push_back({trial, n_train, "benchmark", bench_eval.staffing_cost,
                             bench_eval.mean_abandonment, bench_eval.total, bench.b, 0});

      // corrected: quantile capacities on decomposable components, corrected
      // weekly profile + forecast + fluid on coupled components
      std::vector<double> b_ours(net.m, 0.0);
      std::size_t flagged = 0;
      CorrectionOptions copts;
      copts.smooth = config.smooth;
      copts.solver = cfg;
      for (const NetworkComponent& comp : comps) {
        ComponentRule rule = classify_component(net, comp);
        if (rule.kind == ComponentKind::Case1SingleSingle ||
            rule.kind == ComponentKind::Case2ManySingle) {
          QuantileResult q = case1_quantile(net, rule, train);
          b_ours[rule.pool] = q.b;
          continue;
        }
        if (rule.kind == ComponentKind::SingleServerMultiCustomer &&
            comp.classes.size() <= 2) {
          SubNetwork sub = restrict_to(net, comp);
          HybridResult one =
              hybrid_solve(sub.net, train.restrict_classes(comp.classes), copts);
          for (std::size_t i = 0; i < comp.pools.size(); ++i)
            b_ours[comp.pools[i]] = one.b[i];
          continue;
        }
        // coupled component: day-by-day corrected profile, then forecast
        SubNetwork sub = restrict_to(net, comp);
        DemandScenarioSet sub_train = train.restrict_classes(comp.classes);
        WeeklyProfile corr = corrected_weekly_profile(sub.net, sub_train, copts);
        flagged += corr.flagged_days.empty() ? 0 : 1;
        auto sub_fc = forecast_next_day(corr, config.model);
        StaffingSolution sub_b =
            solve_fluid(sub.net, profile_from_rates(sub_fc), TieBreak::MinNorm, cfg);
        for (std::size_t i = 0; i < comp.pools.size(); ++i)
          b_ours[comp.pools[i]] = sub_b.b[i];
      }
      EvaluationEntry ours_eval = evaluate(net, b_ours, test, cfg);
      report.rows.push_back({trial, n_train, "corrected", ours_eval.staffing_cost,
                             ours_eval.mean_abandonment, ours_eval.total, b_ours, flagged});
    }
  }

  // aggregate means and standard errors per (n_train, method)
  std::map<std::pair<std::size_t, std::string>, std::vector<const ExperimentRow*>> groups;
  for (const auto& row : report.rows) groups[{row.n_train, row.method}].push_back(&row);
  for (const auto& [key, rows] : groups) {
    ExperimentAggregate agg;
    agg.n_train = key.first;
    agg.method = key.second;
    double sum = 0.0, sumsq = 0.0;
    agg.mean_b.assign(net.m, 0.0);
    for (const auto* r : rows) {
      sum += r->total;
      sumsq += r->total * r->total;
      for (std::size_t h = 0; h < net.m; ++h) agg.mean_b[h] += r->b[h];
    }
    double cnt = static_cast<double>(rows.size());
    agg.mean_total = sum / cnt;
    double var = std::max(0.0, sumsq / cnt - agg.mean_total * agg.mean_total);
    agg.stderr_total = cnt > 1 ? std::sqrt(var / (cnt - 1)) : 0.0;
    for (double& v : agg.mean_b) v /= cnt;
    report.aggregates.push_back(std::move(agg));
  }
  return report;
}

std::string experiment_costs_csv(const ExperimentReport& report) {
  std::string out = "n_train,trial,method,staffing_cost,mean_abandonment,total\n";
  char buf[256];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%s,%.10g,%.10g,%.10g\n", r.n_train, r.trial,
                  r.method.c_str(), r.staffing_cost, r.mean_abandonment, r.total);
    out += buf;
  }
  out += "\nn_train,method,mean_total,stderr_total\n";
  for (const auto& a : report.aggregates) {
    std::snprintf(buf, sizeof buf, "%zu,%s,%.10g,%.10g\n", a.n_train, a.method.c_str(),
                  a.mean_total, a.stderr_total);
    out += buf;
  }
  return out;
}

std::string experiment_staffing_csv(const ExperimentReport& report, std::size_t m) {
  std::string out = "n_train,method,pool,mean_b\n";
  char buf[128];
  for (const auto& a : report.aggregates)
    for (std::size_t h = 0; h < m; ++h) {
      std::snprintf(buf, sizeof buf, "%zu,%s,%zu,%.10g\n", a.n_train, a.method.c_str(), h,
                    a.mean_b[h]);
      out += buf;
    }
  return out;
}

}  // namespace fluidcorr
