#include "fluidcorr/correction.hpp"

#include <cmath>
#include <stdexcept>

namespace fluidcorr {

const char* to_string(CorrectionOutcome o) {
  switch (o) {
    case CorrectionOutcome::Universal: return "universal";
    case CorrectionOutcome::DistributionDependent: return "distribution-dependent";
    case CorrectionOutcome::Nonexistent: return "nonexistent";
  }
  return "?";
}

ArrivalRateProfile construct_universal_lambda(
    const ServiceNetwork& net, const std::vector<double>& b_star, std::size_t T,
    std::vector<std::pair<std::size_t, std::size_t>>* chosen) {
  if (b_star.size() != net.m) throw std::invalid_argument("staffing vector has wrong length");
  std::vector<double> class_min(net.n, opt::kInf);
  for (std::size_t j = 0; j < net.k; ++j)
    class_min[net.class_of[j]] = std::min(class_min[net.class_of[j]], net.effective_cost(j));

  std::vector<double> x(net.k, 0.0);
  for (std::size_t h = 0; h < net.m; ++h) {
    if (b_star[h] <= kStaffEps) continue;
    std::size_t pick = CertificateY::npos;
    for (std::size_t j = 0; j < net.k; ++j) {
      if (net.pool_of[j] != h) continue;
      double eff = net.effective_cost(j);
      if (eff <= class_min[net.class_of[j]] + 1e-12 &&
          eff <= net.p[net.class_of[j]] + 1e-12) {
        pick = j;
        break;  // smallest activity index
      }
    }
    if (pick == CertificateY::npos)
      throw std::runtime_error(
          "staffed pool " + std::to_string(h) +
          " has no classwise cost-minimal column under the penalty cap; use the "
          "distribution-dependent construction (step 2)");
    x[pick] = b_star[h] / net.A[h][pick];
    if (chosen) chosen->emplace_back(h, pick);
  }
  std::vector<double> rates(net.n, 0.0);
  for (std::size_t j = 0; j < net.k; ++j)
    if (x[j] > 0.0) rates[net.class_of[j]] += x[j];
  return ArrivalRateProfile::constant(T, std::move(rates));
}

ArrivalRateProfile construct_lambda_from_certificate(const ServiceNetwork& net,
                                                     const std::vector<double>& b_star,
                                                     const CertificateY& cert) {
  if (b_star.size() != net.m) throw std::invalid_argument("staffing vector has wrong length");
  if (cert.m != net.m) throw std::invalid_argument("certificate pool count mismatch");
  ArrivalRateProfile out;
  out.T = cert.T;
  out.n = net.n;
  out.lambda.assign(cert.T, std::vector<double>(net.n, 0.0));
  for (std::size_t t = 0; t < cert.T; ++t) {
    for (std::size_t h = 0; h < net.m; ++h) {
      if (cert.y[t][h] <= 1e-9) continue;
      std::size_t j = cert.witnesses[t][h];
      if (j == CertificateY::npos || j >= net.k || net.pool_of[j] != h)
        throw std::runtime_error("invalid certificate: missing witness for (t=" +
                                 std::to_string(t) + ", pool=" + std::to_string(h) + ")");
      double xj = b_star[h] / net.A[h][j];
      out.lambda[t][net.class_of[j]] += xj;  // contributions add through R
    }
  }
  out.check();
  return out;
}

CorrectionResult run_algorithm1(const ServiceNetwork& net, const DemandScenarioSet& ds,
                                const CorrectionOptions& opts) {
  ds.check();
  CorrectionResult res;
  res.b_star = solve_saa(net, ds, TieBreak::MinNorm, opts.solver);

  std::vector<std::size_t> required;
  if (opts.pools_mode == PoolsMode::FromSAA) {
    for (std::size_t h = 0; h < net.m; ++h)
      if (res.b_star.b[h] > kStaffEps) required.push_back(h);
    if (required.empty()) required.push_back(net.m);  // sentinel below
  }
  UniversalExistenceReport uni =
      opts.pools_mode == PoolsMode::All
          ? universal_existence(net)
          : (required.size() == 1 && required.front() == net.m
                 ? UniversalExistenceReport{true, {}}
                 : universal_existence(net, required));

  if (uni.holds) {
    res.outcome = CorrectionOutcome::Universal;
    res.lambda_hat =
        construct_universal_lambda(net, res.b_star.b, ds.T, &res.chosen_columns);
  } else {
    MembershipOptions mo;
    mo.smooth = opts.smooth;
    mo.solver = opts.solver;
    MembershipResult membership = membership_in_b(net, ds.T, res.b_star.b, mo);
    if (membership.in_b) {
      res.outcome = CorrectionOutcome::DistributionDependent;
      res.certificate = membership.certificate;
      res.lambda_hat =
          construct_lambda_from_certificate(net, res.b_star.b, *membership.certificate);
      if (!membership.exact) res.note = membership.note;
    } else {
      res.outcome = CorrectionOutcome::Nonexistent;
      res.note = membership.note;
      return res;
    }
  }

  // operational reading of decision-correctness: the fluid solve at
  // lambda-hat must price out optimally under the training distribution
  StaffingSolution fluid = solve_fluid(net, *res.lambda_hat, TieBreak::MinNorm, opts.solver);
  res.check.b_resolved = fluid.b;
  res.check.saa_objective = res.b_star.objective;
  res.check.resolve_objective = expected_cost(net, fluid.b, ds, opts.solver);
  res.check.gap = std::fabs(res.check.resolve_objective - res.check.saa_objective);
  res.check.pass =
      res.check.gap <= 1e-6 * (1.0 + std::fabs(res.check.saa_objective));
  return res;
}

}  // namespace fluidcorr
