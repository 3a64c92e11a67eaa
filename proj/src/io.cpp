#include "fluidcorr/io.hpp"

#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace fluidcorr::io {

using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  json j;
  in >> j;
  return j;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump(2) << '\n';
}

// matrix given either row-major flat or as nested rows
std::vector<std::vector<double>> read_matrix(const json& j, std::size_t rows,
                                             std::size_t cols, const std::string& name) {
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols, 0.0));
  if (!j.is_array()) throw std::runtime_error(name + " must be an array");
  if (!j.empty() && j.front().is_array()) {
    if (j.size() != rows) throw std::runtime_error(name + " row count mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
      if (j[r].size() != cols) throw std::runtime_error(name + " column count mismatch");
      for (std::size_t c2 = 0; c2 < cols; ++c2) out[r][c2] = j[r][c2].get<double>();
    }
    return out;
  }
  if (j.size() != rows * cols)
    throw std::runtime_error(name + " must hold " + std::to_string(rows * cols) +
                             " row-major entries");
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c2 = 0; c2 < cols; ++c2) out[r][c2] = j[r * cols + c2].get<double>();
  return out;
}

json flat(const std::vector<std::vector<double>>& mat) {
  json out = json::array();
  for (const auto& row : mat)
    for (double v : row) out.push_back(v);
  return out;
}

}  // namespace

ServiceNetwork load_network(const std::string& path) {
  json j = read_json(path);
  for (const char* key : {"n", "m", "k", "R", "A", "c", "p"})
    if (!j.contains(key))
      throw std::runtime_error(path + ": missing key '" + key + "'");
  std::size_t n = j["n"].get<std::size_t>();
  std::size_t m = j["m"].get<std::size_t>();
  std::size_t k = j["k"].get<std::size_t>();
  return make_network(n, m, k, read_matrix(j["R"], n, k, "R"), read_matrix(j["A"], m, k, "A"),
                      j["c"].get<std::vector<double>>(), j["p"].get<std::vector<double>>());
}

void save_network(const ServiceNetwork& net, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["n"] = net.n;
  j["m"] = net.m;
  j["k"] = net.k;
  j["R"] = flat(net.R);
  j["A"] = flat(net.A);
  j["c"] = net.c;
  j["p"] = net.p;
  write_json(j, path);
}

std::vector<double> load_staffing(const std::string& path) {
  json j = read_json(path);
  if (!j.contains("b")) throw std::runtime_error(path + ": missing key 'b'");
  return j["b"].get<std::vector<double>>();
}

void save_staffing(const std::vector<double>& b, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["b"] = b;
  write_json(j, path);
}

WeeklyProfile load_weekly_profile(const std::string& path) {
  json j = read_json(path);
  WeeklyProfile p;
  p.provenance = j.value("provenance", "average");
  p.rates = j.at("rates").get<std::vector<std::vector<std::vector<double>>>>();
  p.n = p.rates.empty() ? 0 : p.rates[0].size();
  p.check();
  return p;
}

void save_weekly_profile(const WeeklyProfile& profile, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["provenance"] = profile.provenance;
  j["rates"] = profile.rates;
  if (!profile.flagged_days.empty()) j["flagged_days"] = profile.flagged_days;
  write_json(j, path);
}

void save_solution(const StaffingSolution& sol, std::size_t T, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["b"] = sol.b;
  j["objective"] = sol.objective;
  j["staffing_cost"] = sol.staffing_cost;  // c'b * T
  j["abandonment_cost"] = sol.abandonment_cost;
  j["periods"] = T;
  j["tie_break"] = sol.tie_break;
  j["method"] = sol.method;
  json y = json::array(), z = json::array();
  for (const auto& ps : sol.periods) {
    y.push_back(ps.y);
    z.push_back(ps.z);
  }
  j["duals"] = {{"y", y}, {"z", z}};
  write_json(j, path);
}

namespace {

json certificate_json(const CertificateY& cert) {
  json c;
  c["y"] = cert.y;
  c["slack_b1"] = cert.slack_b1;
  c["source"] = cert.source;
  json w = json::array();
  for (std::size_t t = 0; t < cert.T; ++t)
    for (std::size_t h = 0; h < cert.m; ++h)
      if (cert.witnesses[t][h] != CertificateY::npos)
        w.push_back({{"t", t}, {"pool", h}, {"activity", cert.witnesses[t][h]}});
  c["witnesses"] = w;
  return c;
}

}  // namespace

void save_correction(const CorrectionResult& res, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["outcome"] = to_string(res.outcome);
  j["b_star"] = res.b_star.b;
  j["saa_objective"] = res.b_star.objective;
  if (res.lambda_hat) j["lambda"] = res.lambda_hat->lambda;
  if (res.certificate) j["certificate"] = certificate_json(*res.certificate);
  if (!res.chosen_columns.empty()) {
    json cols = json::array();
    for (auto [h, a] : res.chosen_columns) cols.push_back({{"pool", h}, {"activity", a}});
    j["chosen_columns"] = cols;
  }
  if (res.outcome != CorrectionOutcome::Nonexistent) {
    j["check"] = {{"pass", res.check.pass},
                  {"saa_objective", res.check.saa_objective},
                  {"resolve_objective", res.check.resolve_objective},
                  {"gap", res.check.gap},
                  {"b_resolved", res.check.b_resolved}};
  }
  if (!res.note.empty()) j["note"] = res.note;
  write_json(j, path);
}

void save_hybrid(const HybridResult& res, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["b"] = res.b;
  j["lambda"] = res.lambda_hat.lambda;
  json comps = json::array();
  for (const auto& plan : res.components) {
    json c;
    c["pools"] = plan.rule.component.pools;
    c["classes"] = plan.rule.component.classes;
    c["kind"] = to_string(plan.rule.kind);
    c["method"] = plan.method;
    c["b"] = plan.b_local;
    c["flagged"] = plan.flagged;
    if (!plan.rule.pruned_pools.empty()) c["pruned_pools"] = plan.rule.pruned_pools;
    comps.push_back(std::move(c));
  }
  j["components"] = comps;
  write_json(j, path);
}

void save_forecast(const std::vector<std::vector<double>>& rates, ForecastModel model,
                   const std::string& method, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["rates"] = rates;  // 24 rows of per-class rates
  j["model"] = to_string(model);
  j["method"] = method;
  write_json(j, path);
}

void save_evaluation(const EvaluationEntry& entry, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["staffing_cost"] = entry.staffing_cost;
  j["mean_abandonment"] = entry.mean_abandonment;
  j["total"] = entry.total;
  j["per_scenario"] = entry.per_scenario;
  write_json(j, path);
}

void save_membership(const MembershipResult& res, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = res.in_b ? "in-B" : "not-in-B";
  j["exact"] = res.exact;
  if (res.certificate) j["certificate"] = certificate_json(*res.certificate);
  if (!res.note.empty()) j["note"] = res.note;
  write_json(j, path);
}

void save_universal(const UniversalExistenceReport& rep, const std::string& path) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = rep.holds ? "holds" : "fails";
  json pools = json::array();
  for (const auto& w : rep.pools) {
    json e;
    e["pool"] = w.pool;
    e["has_witness"] = w.has_witness;
    if (w.has_witness)
      e["activity"] = w.activity;
    else
      e["reason"] = w.reason;
    pools.push_back(std::move(e));
  }
  j["pools"] = pools;
  write_json(j, path);
}

ExperimentConfig load_experiment_config(const std::string& path) {
  json j = read_json(path);
  ExperimentConfig cfg;
  cfg.monday_rates = j.at("monday_rates").get<std::vector<std::vector<double>>>();
  cfg.trend_factor = j.value("trend_factor", 1.1);
  if (j.contains("train_sizes"))
    cfg.train_sizes = j["train_sizes"].get<std::vector<std::size_t>>();
  cfg.test_samples = j.value("test_samples", std::size_t{30});
  cfg.trials = j.value("trials", std::size_t{5});
  cfg.seed = j.value("seed", std::uint64_t{20240601});
  cfg.model = forecast_model_from(j.value("model", std::string("naive")));
  cfg.smooth = j.value("smooth", false);
  return cfg;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

}  // namespace fluidcorr::io
