#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fluidcorr/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fluidcorr;

namespace {

struct DemandFlags {
  std::string demand_path;
  bool synthetic = false;
  std::size_t weeks = 10;
  double trend = 1.1;
  std::uint64_t seed = 1;
  std::string rates_path;
};

void add_demand_flags(CLI::App* cmd, DemandFlags& f) {
  cmd->add_option("--demand", f.demand_path, "demand CSV (scenario,period,class,count)");
  cmd->add_flag("--synthetic", f.synthetic, "generate synthetic weekly demand instead");
  cmd->add_option("--weeks", f.weeks, "synthetic training weeks");
  cmd->add_option("--trend", f.trend, "day-over-day trend factor");
  cmd->add_option("--seed", f.seed, "random seed for synthetic demand");
  cmd->add_option("--rates", f.rates_path, "Monday base rates JSON (n x 24) for --synthetic");
}

std::vector<std::vector<double>> load_monday_rates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open rates file: " + path);
  json j;
  in >> j;
  if (j.is_object() && j.contains("monday_rates")) j = j["monday_rates"];
  return j.get<std::vector<std::vector<double>>>();
}

DemandScenarioSet load_demand(const DemandFlags& f) {
  if (f.synthetic) {
    if (f.rates_path.empty())
      throw std::runtime_error("--synthetic needs --rates with Monday base rates");
    auto monday = load_monday_rates(f.rates_path);
    std::vector<std::vector<std::vector<double>>> base7(7, monday);
    return generate_synthetic_weeks(base7, f.trend, f.weeks, f.seed);
  }
  if (f.demand_path.empty()) throw std::runtime_error("need --demand or --synthetic");
  return load_csv(f.demand_path);
}

ArrivalRateProfile load_lambda(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open profile file: " + path);
  json j;
  in >> j;
  if (j.is_object() && j.contains("lambda")) j = j["lambda"];
  ArrivalRateProfile p;
  p.lambda = j.get<std::vector<std::vector<double>>>();
  p.T = p.lambda.size();
  p.n = p.T ? p.lambda[0].size() : 0;
  p.check();
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-stage staffing and decision-corrected arrival rates"};
  app.require_subcommand(1);

  std::string network_path, out_path = "out.json";
  double tol = 0.0;  // 0 keeps the solver defaults
  std::string dump_dir;
  app.add_option("--network", network_path, "service network JSON")->required();
  app.add_option("--out", out_path, "output path (directory for 'experiment')");
  app.add_option("--tol", tol, "override gap/slackness solver tolerances");
  app.add_option("--dump-lp", dump_dir, "dump every LP to this directory");

  DemandFlags demand_flags;

  auto* cmd_saa = app.add_subcommand("solve-saa", "optimal staffing for sampled demand");
  add_demand_flags(cmd_saa, demand_flags);

  auto* cmd_fluid = app.add_subcommand("solve-fluid", "staffing for a fixed rate profile");
  std::string lambda_path;
  cmd_fluid->add_option("--lambda", lambda_path, "rate profile JSON (T x n)")->required();

  auto* cmd_exist = app.add_subcommand(
      "check-existence", "universal + distribution-dependent existence tests");
  std::string staffing_path, pools_mode = "all";
  std::size_t periods = 1;
  bool smooth = false;
  cmd_exist->add_option("--staffing", staffing_path, "staffing vector JSON to test");
  cmd_exist->add_option("--periods", periods, "horizon T for --staffing");
  cmd_exist->add_option("--pools", pools_mode, "universal test scope: all | from-saa");
  cmd_exist->add_flag("--smooth", smooth, "smooth the dual certificate");
  add_demand_flags(cmd_exist, demand_flags);

  auto* cmd_correct = app.add_subcommand("correct", "decision-corrected arrival rate");
  cmd_correct->add_option("--pools", pools_mode, "universal test scope: all | from-saa");
  cmd_correct->add_flag("--smooth", smooth, "smooth the dual certificate");
  add_demand_flags(cmd_correct, demand_flags);

  auto* cmd_hybrid = app.add_subcommand("hybrid-solve", "component-wise quantile/corrected plan");
  cmd_hybrid->add_flag("--smooth", smooth, "smooth the dual certificates");
  add_demand_flags(cmd_hybrid, demand_flags);

  auto* cmd_forecast = app.add_subcommand("forecast", "next-day rates from a weekly profile");
  std::string profile_path, method = "avg", model = "naive";
  cmd_forecast->add_option("--profile", profile_path, "weekly profile JSON (7 x n x 24)");
  cmd_forecast->add_option("--method", method, "profile construction: avg | corrected");
  cmd_forecast->add_option("--model", model, "forecaster: naive | ar1");
  add_demand_flags(cmd_forecast, demand_flags);

  auto* cmd_eval = app.add_subcommand("evaluate", "price a staffing plan on test scenarios");
  cmd_eval->add_option("--staffing", staffing_path, "staffing vector JSON")->required();
  add_demand_flags(cmd_eval, demand_flags);

  auto* cmd_exp = app.add_subcommand("experiment", "benchmark vs corrected pipeline");
  std::string config_path;
  cmd_exp->add_option("--config", config_path, "experiment config JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    opt::SolverConfig solver;
    solver.dump_dir = dump_dir;
    if (tol > 0.0) {
      solver.tol_gap = tol;
      solver.tol_cs = tol;
    }
    if (!dump_dir.empty()) fs::create_directories(dump_dir);
    ServiceNetwork net = io::load_network(network_path);

    if (cmd_saa->parsed()) {
      DemandScenarioSet ds = load_demand(demand_flags);
      StaffingSolution sol = solve_saa(net, ds, TieBreak::MinNorm, solver);
      io::save_solution(sol, ds.T, out_path);
      std::printf("b* = [");
      for (std::size_t h = 0; h < sol.b.size(); ++h)
        std::printf("%s%.6g", h ? ", " : "", sol.b[h]);
      std::printf("], objective = %.6f\n", sol.objective);
      return 0;
    }
    if (cmd_fluid->parsed()) {
      ArrivalRateProfile lambda = load_lambda(lambda_path);
      StaffingSolution sol = solve_fluid(net, lambda, TieBreak::MinNorm, solver);
      io::save_solution(sol, lambda.T, out_path);
      std::printf("b = [");
      for (std::size_t h = 0; h < sol.b.size(); ++h)
        std::printf("%s%.6g", h ? ", " : "", sol.b[h]);
      std::printf("], objective = %.6f\n", sol.objective);
      return 0;
    }
    if (cmd_exist->parsed()) {
      json out;
      out["schema_version"] = io::kSchemaVersion;
      std::vector<double> b;
      std::size_t T = periods;
      if (!staffing_path.empty()) {
        b = io::load_staffing(staffing_path);
      } else {
        DemandScenarioSet ds = load_demand(demand_flags);
        StaffingSolution sol = solve_saa(net, ds, TieBreak::MinNorm, solver);
        b = sol.b;
        T = ds.T;
        out["b_star"] = b;
      }
      std::vector<std::size_t> required;  // empty = all pools
      if (pools_mode == "from-saa") {
        for (std::size_t h = 0; h < net.m; ++h)
          if (b[h] > kStaffEps) required.push_back(h);
      } else if (pools_mode != "all") {
        throw std::runtime_error("--pools must be all or from-saa");
      }
      UniversalExistenceReport uni =
          (pools_mode == "from-saa" && required.empty())
              ? UniversalExistenceReport{true, {}}
              : universal_existence(net, required);
      MembershipOptions mo;
      mo.smooth = smooth;
      mo.solver = solver;
      MembershipResult membership = membership_in_b(net, T, b, mo);
      out["universal"] = {{"verdict", uni.holds ? "holds" : "fails"}};
      out["verdict"] = membership.in_b ? "in-B" : "not-in-B";
      out["exact"] = membership.exact;
      if (membership.certificate) {
        json c;
        c["y"] = membership.certificate->y;
        c["slack_b1"] = membership.certificate->slack_b1;
        c["source"] = membership.certificate->source;
        json w = json::array();
        for (std::size_t t = 0; t < membership.certificate->T; ++t)
          for (std::size_t h = 0; h < membership.certificate->m; ++h)
            if (membership.certificate->witnesses[t][h] != CertificateY::npos)
              w.push_back({{"t", t},
                           {"pool", h},
                           {"activity", membership.certificate->witnesses[t][h]}});
        c["witnesses"] = w;
        out["certificate"] = c;
      }
      if (!membership.note.empty()) out["note"] = membership.note;
      std::ofstream f(out_path);
      f << out.dump(2) << '\n';
      std::printf("universal: %s, membership: %s\n", uni.holds ? "holds" : "fails",
                  membership.in_b ? "in-B" : "not-in-B");
      return 0;
    }
    if (cmd_correct->parsed()) {
      DemandScenarioSet ds = load_demand(demand_flags);
      CorrectionOptions opts;
      opts.pools_mode = pools_mode == "from-saa" ? PoolsMode::FromSAA : PoolsMode::All;
      opts.smooth = smooth;
      opts.solver = solver;
      CorrectionResult res = run_algorithm1(net, ds, opts);
      io::save_correction(res, out_path);
      std::printf("outcome: %s\n", to_string(res.outcome));
      if (res.outcome == CorrectionOutcome::Nonexistent) return 2;
      std::printf("re-solve check: %s (gap %.3g)\n", res.check.pass ? "pass" : "FAIL",
                  res.check.gap);
      return 0;
    }
    if (cmd_hybrid->parsed()) {
      DemandScenarioSet ds = load_demand(demand_flags);
      CorrectionOptions opts;
      opts.smooth = smooth;
      opts.solver = solver;
      HybridResult res = hybrid_solve(net, ds, opts);
      io::save_hybrid(res, out_path);
      std::printf("b = [");
      for (std::size_t h = 0; h < res.b.size(); ++h)
        std::printf("%s%.6g", h ? ", " : "", res.b[h]);
      std::printf("]\n");
      return 0;
    }
    if (cmd_forecast->parsed()) {
      WeeklyProfile profile;
      if (!profile_path.empty()) {
        profile = io::load_weekly_profile(profile_path);
      } else {
        DemandScenarioSet ds = load_demand(demand_flags);
        if (method == "corrected") {
          CorrectionOptions opts;
          opts.solver = solver;
          profile = corrected_weekly_profile(net, ds, opts);
        } else {
          profile = average_weekly_profile(ds);
        }
      }
      ForecastModel fm = forecast_model_from(model);
      auto rates = forecast_next_day(profile, fm);
      io::save_forecast(rates, fm, profile.provenance, out_path);
      std::printf("forecast written to %s\n", out_path.c_str());
      return 0;
    }
    if (cmd_eval->parsed()) {
      DemandScenarioSet ds = load_demand(demand_flags);
      std::vector<double> b = io::load_staffing(staffing_path);
      EvaluationEntry entry = evaluate(net, b, ds, solver);
      io::save_evaluation(entry, out_path);
      std::printf("total = %.6f (staffing %.6f + mean abandonment %.6f)\n", entry.total,
                  entry.staffing_cost, entry.mean_abandonment);
      return 0;
    }
    if (cmd_exp->parsed()) {
      ExperimentConfig config = io::load_experiment_config(config_path);
      ExperimentReport report = run_experiment(net, config, solver);
      fs::create_directories(out_path);
      io::write_text((fs::path(out_path) / "costs.csv").string(),
                     experiment_costs_csv(report));
      io::write_text((fs::path(out_path) / "staffing.csv").string(),
                     experiment_staffing_csv(report, net.m));
      json summary;
      summary["schema_version"] = io::kSchemaVersion;
      for (const auto& a : report.aggregates)
        summary["aggregates"].push_back({{"n_train", a.n_train},
                                         {"method", a.method},
                                         {"mean_total", a.mean_total},
                                         {"stderr_total", a.stderr_total},
                                         {"mean_b", a.mean_b}});
      std::ofstream f(fs::path(out_path) / "report.json");
      f << summary.dump(2) << '\n';
      for (const auto& a : report.aggregates)
        std::printf("N=%zu %-9s mean total %.2f (se %.2f)\n", a.n_train, a.method.c_str(),
                    a.mean_total, a.stderr_total);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
