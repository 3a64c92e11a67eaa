#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fluidcorr/correction.hpp"
#include "fluidcorr/demand.hpp"
#include "fluidcorr/network.hpp"

namespace fluidcorr {

// Hourly rates for a 7-day week: rates[day][class][hour].
struct WeeklyProfile {
  std::size_t n = 0;
  std::vector<std::vector<std::vector<double>>> rates;  // [7][n][24]
  std::string provenance;                               // "average" | "corrected"
  std::vector<std::size_t> flagged_days;                // corrected profile fallbacks

  void check() const;
};

enum class ForecastModel { SeasonalNaive24, Ar1PlusSeasonal };

const char* to_string(ForecastModel m);
ForecastModel forecast_model_from(const std::string& name);

// Element-wise mean across sample weeks (weights respected). Scenarios must
// have T = 168 ordered by (day, hour).
WeeklyProfile average_weekly_profile(const DemandScenarioSet& ds);

// Day-by-day corrected profile on a (sub)network: per day, the sampled
// staffing problem over the weeks, a membership certificate, and the
// certificate construction. Days without a correction fall back to the
// cheapest-column split of the day's staffing and are flagged.
WeeklyProfile corrected_weekly_profile(const ServiceNetwork& net,
                                       const DemandScenarioSet& ds,
                                       const CorrectionOptions& opts = {});

// Next-day (Monday) rates from a weekly profile, clamped at zero.
// - seasonal-naive-24: Monday slice scaled by the fitted week-over-week
//   growth (least-squares log-trend across the 7 daily levels).
// - ar1-plus-seasonal: x_t = alpha x_{t-1} + beta x_{t-24} + mu per class,
//   rolled forward 24 steps.
std::vector<std::vector<double>> forecast_next_day(const WeeklyProfile& profile,
                                                   ForecastModel model);

// Fitted per-day growth factor of the seasonal-naive model (exp of the
// log-linear slope over the 7 daily mean levels).
double fitted_daily_growth(const WeeklyProfile& profile, std::size_t customer_class);

}  // namespace fluidcorr
