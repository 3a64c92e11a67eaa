#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fluidcorr/mip.hpp"
#include "fluidcorr/network.hpp"

namespace fluidcorr {

struct PoolWitnessReport {
  std::size_t pool = 0;
  bool has_witness = false;
  std::size_t activity = 0;  // meaningful when has_witness
  std::string reason;        // why the pool fails otherwise
};

// Parameter-only existence test: every required pool must own an activity
// that is classwise cost-minimal and within the penalty cap.
struct UniversalExistenceReport {
  bool holds = false;
  std::vector<PoolWitnessReport> pools;  // one entry per required pool
};

// required_pools empty => all pools (the conservative default; the
// "ever staffed" quantifier is not enumerable).
UniversalExistenceReport universal_existence(
    const ServiceNetwork& net, const std::vector<std::size_t>& required_pools = {});

// Dual sequence witnessing membership of b in the fluid-correctable set.
struct CertificateY {
  std::size_t T = 0;
  std::size_t m = 0;
  std::vector<std::vector<double>> y;  // [t][h]
  // witness activity per (t, h); npos when y_{t,h} == 0
  static constexpr std::size_t npos = ~std::size_t{0};
  std::vector<std::vector<std::size_t>> witnesses;
  std::vector<double> slack_b1;  // c~ - sum_t y_t
  std::string source;            // uniform-heuristic | pattern | mip (+smoothed)
  double max_jump() const;       // max_h max_t |y_{t,h} - y_{t+1,h}|
};

struct CertificateCheck {
  bool ok = false;
  double max_residual = 0.0;
  std::string detail;
};

// Re-checks (B1)-(B3) directly against the definition, independent of how
// the certificate was produced.
CertificateCheck verify_certificate(const ServiceNetwork& net, std::size_t T,
                                    const std::vector<double>& b,
                                    const CertificateY& cert);

// Appendix-style feasibility MIP over variables y_{t,h}, r_{t,j}, w_{t,h},
// v_{t,j} (in that order), constraints (C1)-(C8). With smooth set, appends
// per-pool jump bounds delta_h and minimizes their sum.
opt::MIPFeasibilityProblem build_certificate_mip(const ServiceNetwork& net,
                                                 std::size_t T,
                                                 const std::vector<double>& b,
                                                 bool smooth = false);

struct MembershipOptions {
  bool smooth = false;          // post-smooth the dual sequence
  std::size_t binary_limit = 2048;
  opt::SolverConfig solver;
};

struct MembershipResult {
  bool in_b = false;
  bool exact = true;  // false only when the binary limit forced a heuristic answer
  std::optional<CertificateY> certificate;
  std::string note;
};

// Fast paths (uniform budget split, then pattern construction) produce
// verified certificates; otherwise the MIP decides. Infeasibility message is
// deliberately plain: no dual sequence satisfies (B1)-(B3).
MembershipResult membership_in_b(const ServiceNetwork& net, std::size_t T,
                                 const std::vector<double>& b,
                                 const MembershipOptions& opts = {});

struct SetBViolation {
  std::string property;  // same-support | subset-support | midpoint-convexity
  std::vector<double> b1, b2;
  std::string detail;
};

struct SetBPropertyReport {
  std::size_t checked_pairs = 0;
  std::vector<SetBViolation> violations;
  bool ok() const { return violations.empty(); }
};

// Empirical validation of the structural properties of the correctable set
// on a list of staffing vectors; any violation indicates an encoding defect.
SetBPropertyReport set_b_properties(const ServiceNetwork& net, std::size_t T,
                                    const std::vector<std::vector<double>>& samples,
                                    const MembershipOptions& opts = {});

constexpr double kStaffEps = 1e-9;  // b_h > eps counts as staffed

}  // namespace fluidcorr
