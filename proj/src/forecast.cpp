#include "fluidcorr/forecast.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fluidcorr {

void WeeklyProfile::check() const {
  if (rates.size() != 7) throw std::invalid_argument("weekly profile needs 7 days");
  for (const auto& day : rates) {
    if (day.size() != n) throw std::invalid_argument("weekly profile class mismatch");
    for (const auto& cls : day) {
      if (cls.size() != 24) throw std::invalid_argument("weekly profile needs 24 hours");
      for (double v : cls)
        if (!(v >= 0.0) || !std::isfinite(v))
          throw std::invalid_argument("weekly profile must be finite and nonnegative");
    }
  }
}

const char* to_string(ForecastModel m) {
  return m == ForecastModel::SeasonalNaive24 ? "seasonal-naive-24" : "ar1-plus-seasonal";
}

ForecastModel forecast_model_from(const std::string& name) {
  if (name == "naive" || name == "seasonal-naive-24") return ForecastModel::SeasonalNaive24;
  if (name == "ar1" || name == "ar1-plus-seasonal") return ForecastModel::Ar1PlusSeasonal;
  throw std::invalid_argument("unknown forecast model: " + name);
}

WeeklyProfile average_weekly_profile(const DemandScenarioSet& ds) {
  ds.check();
  if (ds.T != 168)
    throw std::invalid_argument("weekly profile needs T = 168 (day, hour) periods");
  WeeklyProfile out;
  out.n = ds.n;
  out.provenance = "average";
  out.rates.assign(7, std::vector<std::vector<double>>(ds.n, std::vector<double>(24, 0.0)));
  for (std::size_t z = 0; z < ds.Z; ++z)
    for (std::size_t d = 0; d < 7; ++d)
      for (std::size_t t = 0; t < 24; ++t)
        for (std::size_t i = 0; i < ds.n; ++i)
          out.rates[d][i][t] += ds.weights[z] * ds.paths[z][d * 24 + t][i];
  return out;
}

WeeklyProfile corrected_weekly_profile(const ServiceNetwork& net,
                                       const DemandScenarioSet& ds,
                                       const CorrectionOptions& opts) {
  ds.check();
  if (ds.T != 168)
    throw std::invalid_argument("weekly profile needs T = 168 (day, hour) periods");
  if (ds.n != net.n) throw std::invalid_argument("scenario class count mismatch");
  WeeklyProfile out;
  out.n = net.n;
  out.provenance = "corrected";
  out.rates.assign(7, std::vector<std::vector<double>>(net.n, std::vector<double>(24, 0.0)));

  for (std::size_t d = 0; d < 7; ++d) {
    DemandScenarioSet day = ds.slice_periods(d * 24, 24);
    StaffingSolution b_day = solve_saa(net, day, TieBreak::MinNorm, opts.solver);
    MembershipOptions mo;
    mo.smooth = opts.smooth;
    mo.solver = opts.solver;
    MembershipResult membership = membership_in_b(net, 24, b_day.b, mo);
    ArrivalRateProfile lam;
    if (membership.in_b) {
      lam = construct_lambda_from_certificate(net, b_day.b, *membership.certificate);
    } else {
      // no certificate for this day: spread each staffed pool over its
      // cheapest column, constant across the day, and flag it
      out.flagged_days.push_back(d);
      std::vector<double> rates(net.n, 0.0);
      for (std::size_t h = 0; h < net.m; ++h) {
        if (b_day.b[h] <= kStaffEps) continue;
        std::size_t best = CertificateY::npos;
        for (std::size_t j = 0; j < net.k; ++j)
          if (net.pool_of[j] == h &&
              (best == CertificateY::npos ||
               net.effective_cost(j) < net.effective_cost(best)))
            best = j;
        rates[net.class_of[best]] += b_day.b[h] / net.A[h][best];
      }
      lam = ArrivalRateProfile::constant(24, std::move(rates));
    }
    for (std::size_t t = 0; t < 24; ++t)
      for (std::size_t i = 0; i < net.n; ++i) out.rates[d][i][t] = lam.lambda[t][i];
  }
  return out;
}

double fitted_daily_growth(const WeeklyProfile& profile, std::size_t customer_class) {
  double levels[7];
  for (std::size_t d = 0; d < 7; ++d) {
    double s = 0.0;
    for (double v : profile.rates[d][customer_class]) s += v;
    levels[d] = s / 24.0;
  }
  for (double l : levels)
    if (!(l > 0.0)) return 1.0;  // degenerate day, no trend information
  // least squares of log(level) on day index
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int d = 0; d < 7; ++d) {
    double x = static_cast<double>(d), y = std::log(levels[d]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double slope = (7.0 * sxy - sx * sy) / (7.0 * sxx - sx * sx);
  return std::exp(slope);
}

std::vector<std::vector<double>> forecast_next_day(const WeeklyProfile& profile,
                                                   ForecastModel model) {
  profile.check();
  const std::size_t n = profile.n;
  std::vector<std::vector<double>> out(24, std::vector<double>(n, 0.0));

  if (model == ForecastModel::SeasonalNaive24) {
    for (std::size_t i = 0; i < n; ++i) {
      double g = fitted_daily_growth(profile, i);
      double week_growth = std::pow(g, 7.0);
      for (std::size_t t = 0; t < 24; ++t)
        out[t][i] = std::max(0.0, profile.rates[0][i][t] * week_growth);
    }
    return out;
  }

  for (std::size_t i = 0; i < n; ++i) {
    // flatten to the 168-hour series
    double s[168];
    bool all_zero = true;
    for (std::size_t d = 0; d < 7; ++d)
      for (std::size_t t = 0; t < 24; ++t) {
        s[d * 24 + t] = profile.rates[d][i][t];
        all_zero = all_zero && s[d * 24 + t] == 0.0;
      }
    if (all_zero) continue;
    // least squares for x_t = alpha x_{t-1} + beta x_{t-24} + mu, t = 24..167
    double ata[3][3] = {};
    double atb[3] = {};
    for (std::size_t t = 24; t < 168; ++t) {
      double row[3] = {s[t - 1], s[t - 24], 1.0};
      for (int a = 0; a < 3; ++a) {
        for (int b2 = 0; b2 < 3; ++b2) ata[a][b2] += row[a] * row[b2];
        atb[a] += row[a] * s[t];
      }
    }
    for (int a = 0; a < 3; ++a) ata[a][a] += 1e-9;  // collinear series (e.g. constant)
    // gaussian elimination
    double mat[3][4];
    for (int a = 0; a < 3; ++a) {
      for (int b2 = 0; b2 < 3; ++b2) mat[a][b2] = ata[a][b2];
      mat[a][3] = atb[a];
    }
    for (int col = 0; col < 3; ++col) {
      int piv = col;
      for (int r2 = col + 1; r2 < 3; ++r2)
        if (std::fabs(mat[r2][col]) > std::fabs(mat[piv][col])) piv = r2;
      std::swap(mat[col], mat[piv]);
      for (int r2 = 0; r2 < 3; ++r2) {
        if (r2 == col || mat[col][col] == 0.0) continue;
        double f = mat[r2][col] / mat[col][col];
        for (int b2 = col; b2 < 4; ++b2) mat[r2][b2] -= f * mat[col][b2];
      }
    }
    double alpha = mat[0][0] != 0.0 ? mat[0][3] / mat[0][0] : 0.0;
    double beta = mat[1][1] != 0.0 ? mat[1][3] / mat[1][1] : 0.0;
    double mu = mat[2][2] != 0.0 ? mat[2][3] / mat[2][2] : 0.0;

    double extended[192];
    std::copy(s, s + 168, extended);
    for (std::size_t t = 168; t < 192; ++t) {
      double v = alpha * extended[t - 1] + beta * extended[t - 24] + mu;
      extended[t] = std::max(0.0, v);
    }
    for (std::size_t t = 0; t < 24; ++t) out[t][i] = extended[168 + t];
  }
  return out;
}

}  // namespace fluidcorr
