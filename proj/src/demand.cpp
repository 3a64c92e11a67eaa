#include "fluidcorr/demand.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fluidcorr {

void DemandScenarioSet::check() const {
  if (weights.size() != Z || paths.size() != Z)
    throw std::invalid_argument("scenario count mismatch");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) throw std::invalid_argument("weights must be strictly positive");
    sum += w;
  }
  if (Z > 0 && std::fabs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("weights must sum to 1");
  for (const auto& path : paths) {
    if (path.size() != T) throw std::invalid_argument("path has wrong period count");
    for (const auto& row : path) {
      if (row.size() != n) throw std::invalid_argument("path has wrong class count");
      for (double d : row)
        if (!(d >= 0.0) || !std::isfinite(d))
          throw std::invalid_argument("demand must be finite and nonnegative");
    }
  }
}

DemandScenarioSet DemandScenarioSet::restrict_classes(
    const std::vector<std::size_t>& classes) const {
  DemandScenarioSet out;
  out.Z = Z;
  out.T = T;
  out.n = classes.size();
  out.weights = weights;
  out.paths.resize(Z);
  for (std::size_t z = 0; z < Z; ++z) {
    out.paths[z].resize(T);
    for (std::size_t t = 0; t < T; ++t) {
      out.paths[z][t].resize(classes.size());
      for (std::size_t i = 0; i < classes.size(); ++i)
        out.paths[z][t][i] = paths[z][t][classes[i]];
    }
  }
  return out;
}

DemandScenarioSet DemandScenarioSet::slice_periods(std::size_t first,
                                                   std::size_t count) const {
  if (first + count > T) throw std::out_of_range("period slice out of range");
  DemandScenarioSet out;
  out.Z = Z;
  out.T = count;
  out.n = n;
  out.weights = weights;
  out.paths.resize(Z);
  for (std::size_t z = 0; z < Z; ++z)
    out.paths[z].assign(paths[z].begin() + static_cast<long>(first),
                        paths[z].begin() + static_cast<long>(first + count));
  return out;
}

DemandScenarioSet make_scenarios(std::vector<std::vector<std::vector<double>>> paths,
                                 std::vector<double> weights) {
  DemandScenarioSet ds;
  ds.Z = paths.size();
  ds.T = ds.Z ? paths[0].size() : 0;
  ds.n = (ds.Z && ds.T) ? paths[0][0].size() : 0;
  ds.paths = std::move(paths);
  ds.weights = weights.empty()
                   ? std::vector<double>(ds.Z, ds.Z ? 1.0 / static_cast<double>(ds.Z) : 0.0)
                   : std::move(weights);
  ds.check();
  return ds;
}

ExpandedDemandSequence expand(const DemandScenarioSet& ds, std::uint64_t max_denominator) {
  ds.check();
  // per-weight continued-fraction denominators, then the lcm
  auto denominator_of = [&](double w) -> std::uint64_t {
    double best_err = 1e9;
    std::uint64_t best_q = 0;
    // Stern-Brocot style search keeps this small for everyday weights.
    double x = w;
    std::uint64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int iter = 0; iter < 64; ++iter) {
      double a = std::floor(x);
      std::uint64_t ai = static_cast<std::uint64_t>(a);
      std::uint64_t p2 = ai * p1 + p0, q2 = ai * q1 + q0;
      if (q2 == 0 || q2 > max_denominator) break;
      double err = std::fabs(w - static_cast<double>(p2) / static_cast<double>(q2));
      if (err < best_err) {
        best_err = err;
        best_q = q2;
      }
      if (err < 1e-13) break;
      double frac = x - a;
      if (frac < 1e-15) break;
      x = 1.0 / frac;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    }
    if (best_q == 0 || best_err > 1e-9)
      throw std::runtime_error(
          "scenario weight has no small rational representation; resample to "
          "equal weights (resample_equal_weights) first");
    return best_q;
  };

  auto gcd = [](std::uint64_t a, std::uint64_t b) {
    while (b) { std::uint64_t t = a % b; a = b; b = t; }
    return a;
  };
  std::uint64_t lcm = 1;
  for (double w : ds.weights) {
    std::uint64_t q = denominator_of(w);
    lcm = lcm / gcd(lcm, q) * q;
    if (lcm > max_denominator)
      throw std::runtime_error(
          "common weight denominator exceeds limit; resample to equal weights "
          "(resample_equal_weights) first");
  }

  ExpandedDemandSequence out;
  out.z_tilde = lcm;
  out.taus = ds.T * lcm;
  out.scale = static_cast<double>(lcm) * static_cast<double>(ds.T);
  out.demands.reserve(out.taus);
  for (std::size_t z = 0; z < ds.Z; ++z) {
    std::uint64_t copies =
        static_cast<std::uint64_t>(std::llround(ds.weights[z] * static_cast<double>(lcm)));
    for (std::uint64_t c = 0; c < copies; ++c)
      for (std::size_t t = 0; t < ds.T; ++t) out.demands.push_back(ds.paths[z][t]);
  }
  if (out.demands.size() != out.taus)
    throw std::runtime_error("weight rounding did not clear denominators exactly");
  return out;
}

DemandScenarioSet resample_equal_weights(const DemandScenarioSet& ds,
                                         std::size_t z_prime, Rng rng) {
  ds.check();
  std::vector<double> cum(ds.Z);
  double acc = 0.0;
  for (std::size_t z = 0; z < ds.Z; ++z) {
    acc += ds.weights[z];
    cum[z] = acc;
  }
  std::vector<std::vector<std::vector<double>>> picked;
  picked.reserve(z_prime);
  for (std::size_t i = 0; i < z_prime; ++i) {
    double u = rng.next_double() * acc;
    std::size_t z = static_cast<std::size_t>(
        std::lower_bound(cum.begin(), cum.end(), u) - cum.begin());
    if (z >= ds.Z) z = ds.Z - 1;
    picked.push_back(ds.paths[z]);
  }
  return make_scenarios(std::move(picked));
}

EmpiricalMixtureCDF::EmpiricalMixtureCDF(std::vector<double> samples,
                                         std::vector<double> weights) {
  if (samples.empty()) throw std::invalid_argument("empty sample set");
  if (weights.size() != samples.size())
    throw std::invalid_argument("sample/weight size mismatch");
  std::vector<std::size_t> order(samples.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return samples[a] < samples[b]; });
  samples_.reserve(samples.size());
  cum_.reserve(samples.size());
  double total = 0.0;
  for (double w : weights) total += w;
  double acc = 0.0;
  for (std::size_t idx : order) {
    acc += weights[idx] / total;
    samples_.push_back(samples[idx]);
    cum_.push_back(acc);
  }
  cum_.back() = 1.0;
}

double EmpiricalMixtureCDF::quantile(double q) const {
  if (q <= 0.0) return samples_.front();
  if (q >= 1.0) return samples_.back();
  // smallest sample with cumulative weight >= q (the ceil(q*M) order
  // statistic under equal weights)
  std::size_t lo = 0, hi = samples_.size() - 1;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (cum_[mid] >= q - 1e-12)
      hi = mid;
    else
      lo = mid + 1;
  }
  return samples_[lo];
}

double EmpiricalMixtureCDF::cdf(double x) const {
  std::size_t idx = static_cast<std::size_t>(
      std::upper_bound(samples_.begin(), samples_.end(), x) - samples_.begin());
  return idx == 0 ? 0.0 : cum_[idx - 1];
}

EmpiricalMixtureCDF empirical_mixture_cdf(const DemandScenarioSet& ds,
                                          std::size_t customer_class) {
  ds.check();
  if (customer_class >= ds.n) throw std::out_of_range("class index out of range");
  if (ds.Z * ds.T == 0) throw std::invalid_argument("empty sample set");
  std::vector<double> samples, weights;
  samples.reserve(ds.Z * ds.T);
  weights.reserve(ds.Z * ds.T);
  for (std::size_t z = 0; z < ds.Z; ++z)
    for (std::size_t t = 0; t < ds.T; ++t) {
      samples.push_back(ds.paths[z][t][customer_class]);
      weights.push_back(ds.weights[z]);
    }
  return EmpiricalMixtureCDF(std::move(samples), std::move(weights));
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) {
    // trim
    std::size_t a = field.find_first_not_of(" \t\r");
    std::size_t b = field.find_last_not_of(" \t\r");
    out.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
  }
  return out;
}

}  // namespace

DemandScenarioSet load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open demand file: " + path);
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw std::runtime_error("empty demand file: " + path);
  ++lineno;
  {
    auto header = split_csv_line(line);
    if (header.size() != 4 || header[0] != "scenario" || header[1] != "period" ||
        header[2] != "class" || header[3] != "count")
      throw std::runtime_error(path + ": expected header scenario,period,class,count");
  }

  std::vector<std::string> scenario_order;
  std::map<std::string, std::size_t> scenario_index;
  // cells[z] maps (period, class) -> count
  std::vector<std::map<std::pair<long, long>, double>> cells;
  long max_period = -1, max_class = -1;

  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto f = split_csv_line(line);
    auto fail = [&](const std::string& why) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + why);
    };
    if (f.size() != 4) fail("malformed row (expected 4 fields)");
    long period, cls;
    double count;
    try {
      std::size_t used;
      period = std::stol(f[1], &used);
      if (used != f[1].size()) fail("malformed period");
      cls = std::stol(f[2], &used);
      if (used != f[2].size()) fail("malformed class");
      count = std::stod(f[3], &used);
      if (used != f[3].size()) fail("malformed count");
    } catch (const std::logic_error&) {
      fail("malformed row");
      return {};  // unreachable
    }
    if (period < 0) fail("negative period");
    if (cls < 0) fail("negative class");
    if (count < 0.0) fail("negative demand at line " + std::to_string(lineno));
    if (!std::isfinite(count)) fail("non-finite demand");

    auto it = scenario_index.find(f[0]);
    std::size_t z;
    if (it == scenario_index.end()) {
      z = scenario_order.size();
      scenario_index.emplace(f[0], z);
      scenario_order.push_back(f[0]);
      cells.emplace_back();
    } else {
      z = it->second;
    }
    auto key = std::make_pair(period, cls);
    if (!cells[z].emplace(key, count).second)
      fail("duplicate cell (scenario " + f[0] + ", period " + f[1] + ", class " + f[2] + ")");
    max_period = std::max(max_period, period);
    max_class = std::max(max_class, cls);
  }
  if (scenario_order.empty()) throw std::runtime_error(path + ": no data rows");

  const std::size_t T = static_cast<std::size_t>(max_period + 1);
  const std::size_t n = static_cast<std::size_t>(max_class + 1);
  std::vector<std::vector<std::vector<double>>> paths;
  paths.reserve(scenario_order.size());
  for (std::size_t z = 0; z < scenario_order.size(); ++z) {
    if (cells[z].size() != T * n)
      throw std::runtime_error(path + ": scenario " + scenario_order[z] +
                               " has " + std::to_string(cells[z].size()) +
                               " cells, expected " + std::to_string(T * n) +
                               " (missing (period, class) cells are rejected)");
    std::vector<std::vector<double>> path(T, std::vector<double>(n, 0.0));
    for (const auto& [key, val] : cells[z])
      path[static_cast<std::size_t>(key.first)][static_cast<std::size_t>(key.second)] = val;
    paths.push_back(std::move(path));
  }
  return make_scenarios(std::move(paths));
}

void save_csv(const DemandScenarioSet& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write demand file: " + path);
  out << "scenario,period,class,count\n";
  for (std::size_t z = 0; z < ds.Z; ++z)
    for (std::size_t t = 0; t < ds.T; ++t)
      for (std::size_t i = 0; i < ds.n; ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.10g", ds.paths[z][t][i]);
        out << 's' << z << ',' << t << ',' << i << ',' << buf << '\n';
      }
}

DemandScenarioSet generate_synthetic_weeks(
    const std::vector<std::vector<std::vector<double>>>& base_rates,
    double trend_factor, std::size_t num_weeks, std::uint64_t seed) {
  if (base_rates.size() != 7) throw std::invalid_argument("base_rates must be 7 x n x 24");
  if (!(trend_factor > 0.0)) throw std::invalid_argument("trend factor must be positive");
  const std::size_t n = base_rates[0].size();
  for (const auto& day : base_rates) {
    if (day.size() != n) throw std::invalid_argument("base_rates must be 7 x n x 24");
    for (const auto& cls : day) {
      if (cls.size() != 24) throw std::invalid_argument("base_rates must be 7 x n x 24");
      for (double r : cls)
        if (!(r >= 0.0)) throw std::invalid_argument("base rates must be nonnegative");
    }
  }
  Rng master(seed);
  std::vector<std::vector<std::vector<double>>> paths;
  paths.reserve(num_weeks);
  for (std::size_t w = 0; w < num_weeks; ++w) {
    Rng week_rng = master.split(0x77eeULL, w);  // per-week stream
    std::vector<std::vector<double>> path(168, std::vector<double>(n, 0.0));
    for (std::size_t d = 0; d < 7; ++d) {
      double scale = std::pow(trend_factor, static_cast<double>(d));
      for (std::size_t t = 0; t < 24; ++t)
        for (std::size_t i = 0; i < n; ++i)
          path[d * 24 + t][i] =
              static_cast<double>(week_rng.poisson(base_rates[0][i][t] * scale));
    }
    paths.push_back(std::move(path));
  }
  return make_scenarios(std::move(paths));
}

}  // namespace fluidcorr
