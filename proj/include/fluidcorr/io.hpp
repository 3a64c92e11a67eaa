#pragma once

#include <string>
#include <vector>

#include "fluidcorr/correction.hpp"
#include "fluidcorr/decomposable.hpp"
#include "fluidcorr/evaluate.hpp"
#include "fluidcorr/existence.hpp"
#include "fluidcorr/forecast.hpp"
#include "fluidcorr/network.hpp"
#include "fluidcorr/twostage.hpp"

namespace fluidcorr::io {

inline constexpr int kSchemaVersion = 1;

// Network document: keys n, m, k, R (row-major 0/1), A (row-major), c, p.
// Nested row arrays are accepted as a convenience.
ServiceNetwork load_network(const std::string& path);
void save_network(const ServiceNetwork& net, const std::string& path);

std::vector<double> load_staffing(const std::string& path);  // {"b": [...]}
void save_staffing(const std::vector<double>& b, const std::string& path);

WeeklyProfile load_weekly_profile(const std::string& path);
void save_weekly_profile(const WeeklyProfile& profile, const std::string& path);

void save_solution(const StaffingSolution& sol, std::size_t T, const std::string& path);
void save_correction(const CorrectionResult& res, const std::string& path);
void save_hybrid(const HybridResult& res, const std::string& path);
void save_forecast(const std::vector<std::vector<double>>& rates, ForecastModel model,
                   const std::string& method, const std::string& path);
void save_evaluation(const EvaluationEntry& entry, const std::string& path);

void save_membership(const MembershipResult& res, const std::string& path);
void save_universal(const UniversalExistenceReport& rep, const std::string& path);

ExperimentConfig load_experiment_config(const std::string& path);

void write_text(const std::string& path, const std::string& text);

}  // namespace fluidcorr::io
