#include "fluidcorr/decomposable.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace fluidcorr {

const char* to_string(ComponentKind k) {
  switch (k) {
    case ComponentKind::Case1SingleSingle: return "case1-single-single";
    case ComponentKind::Case2ManySingle: return "case2-many-single";
    case ComponentKind::SingleServerMultiCustomer: return "single-server-multi-customer";
    case ComponentKind::General: return "general";
  }
  return "?";
}

ComponentRule classify_component(const ServiceNetwork& net, const NetworkComponent& comp) {
  ComponentRule rule;
  rule.component = comp;
  const std::size_t pools = comp.pools.size();
  const std::size_t classes = comp.classes.size();
  if (classes == 1) {
    // dominance pruning: keep the cheapest effective-cost activity,
    // ties broken by smallest pool then smallest activity index
    std::size_t best = comp.activities.front();
    for (std::size_t j : comp.activities) {
      double ej = net.effective_cost(j), eb = net.effective_cost(best);
      if (ej < eb - 1e-12 ||
          (ej < eb + 1e-12 && (net.pool_of[j] < net.pool_of[best] ||
                               (net.pool_of[j] == net.pool_of[best] && j < best))))
        best = j;
    }
    rule.pool = net.pool_of[best];
    rule.activity = best;
    for (std::size_t h : comp.pools)
      if (h != rule.pool) rule.pruned_pools.push_back(h);
    rule.kind = pools == 1 ? ComponentKind::Case1SingleSingle
                           : ComponentKind::Case2ManySingle;
    return rule;
  }
  if (pools == 1) {
    rule.pool = comp.pools.front();
    rule.kind = ComponentKind::SingleServerMultiCustomer;
    return rule;
  }
  rule.kind = ComponentKind::General;
  return rule;
}

QuantileResult case1_quantile(const ServiceNetwork& net, const ComponentRule& rule,
                              const DemandScenarioSet& ds) {
  if (rule.kind != ComponentKind::Case1SingleSingle &&
      rule.kind != ComponentKind::Case2ManySingle)
    throw std::invalid_argument("case1_quantile needs a single-customer component");
  const std::size_t j = rule.activity;
  const std::size_t h = net.pool_of[j];
  const std::size_t cls = net.class_of[j];
  const double a = net.A[h][j];
  const double effective = net.c[h] * a;  // per-period cost
  QuantileResult out;
  if (effective >= net.p[cls]) return out;  // b* = 0
  out.quantile_prob = 1.0 - effective / net.p[cls];
  EmpiricalMixtureCDF cdf = empirical_mixture_cdf(ds, cls);
  out.lambda = cdf.quantile(out.quantile_prob);
  out.b = a * out.lambda;
  return out;
}

namespace {

double bisect_nonincreasing(const std::function<double(double)>& g, double lo, double hi) {
  double glo = g(lo);
  if (glo <= 0.0) return lo;
  if (g(hi) > 0.0) return hi;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
    if (hi - lo <= 1e-13 * (1.0 + hi)) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double two_customer_newsvendor(double p1, double p2, double c,
                               const std::vector<double>& f1_samples,
                               const std::vector<double>& f2_samples) {
  if (!(p1 >= p2) || !(p2 >= 0.0) || !(c > 0.0))
    throw std::invalid_argument("need p1 >= p2 >= 0 and c > 0");
  if (f1_samples.size() < 2 || f2_samples.size() < 2)
    throw std::invalid_argument("need at least 2 samples per distribution");
  EmpiricalMixtureCDF F1(f1_samples, std::vector<double>(f1_samples.size(), 1.0));
  EmpiricalMixtureCDF F2(f2_samples, std::vector<double>(f2_samples.size(), 1.0));
  const double hi = std::max(0.0, F1.max()) + std::max(0.0, F2.max()) + 1.0;
  const double inv_m = 1.0 / static_cast<double>(f1_samples.size());
  auto g = [&](double q) {
    double second = 0.0;
    for (double x : F1.samples()) {
      if (x < q) second += 1.0 - F2.cdf(q - x);
    }
    return p1 * (1.0 - F1.cdf(q)) + p2 * inv_m * second - c;
  };
  return bisect_nonincreasing(g, 0.0, hi);
}

double two_customer_newsvendor_continuous(double p1, double p2, double c,
                                          const std::function<double(double)>& F1,
                                          const std::function<double(double)>& F2,
                                          double hi, std::size_t steps) {
  if (!(p1 >= p2) || !(p2 >= 0.0) || !(c > 0.0))
    throw std::invalid_argument("need p1 >= p2 >= 0 and c > 0");
  auto g = [&](double q) {
    // int_0^q (1 - F2(q - x)) dF1(x) by midpoint quadrature
    double integral = 0.0;
    if (q > 0.0) {
      double step = q / static_cast<double>(steps);
      for (std::size_t s = 0; s < steps; ++s) {
        double x0 = step * static_cast<double>(s);
        double x1 = x0 + step;
        double mass = F1(x1) - F1(x0);
        integral += (1.0 - F2(q - 0.5 * (x0 + x1))) * mass;
      }
    }
    return p1 * (1.0 - F1(q)) + p2 * integral - c;
  };
  return bisect_nonincreasing(g, 0.0, hi);
}

namespace {

// Two classes on one pool: first-order condition in capacity units, priority
// to the higher-penalty class, then a deterministic split of the capacity
// back into per-class rates (priority class up to its solo quantile).
ComponentPlan newsvendor_component(const ServiceNetwork& net, const ComponentRule& rule,
                                   const DemandScenarioSet& ds, std::size_t T) {
  ComponentPlan plan;
  plan.rule = rule;
  plan.method = "newsvendor2";
  const auto& comp = rule.component;
  const std::size_t h = rule.pool;

  struct ClassInfo {
    std::size_t cls;      // global class
    std::size_t local;    // index within component
    std::size_t activity; // cheapest activity serving it from h
    double a;
    double p;
  };
  std::vector<ClassInfo> infos;
  for (std::size_t li = 0; li < comp.classes.size(); ++li) {
    std::size_t cls = comp.classes[li];
    std::size_t best = CertificateY::npos;
    for (std::size_t j : comp.activities)
      if (net.class_of[j] == cls &&
          (best == CertificateY::npos || net.consumption(j) < net.consumption(best)))
        best = j;
    infos.push_back({cls, li, best, net.consumption(best), net.p[cls]});
  }
  // serve the higher-penalty class first; ties by class index
  std::sort(infos.begin(), infos.end(), [](const ClassInfo& a, const ClassInfo& b) {
    return a.p > b.p || (a.p == b.p && a.cls < b.cls);
  });
  // classes whose effective cost reaches the penalty never justify capacity
  std::vector<ClassInfo> active;
  for (const auto& ci : infos)
    if (net.c[h] * ci.a < ci.p) active.push_back(ci);

  plan.b_local.assign(comp.pools.size(), 0.0);
  plan.lambda_local.assign(T, std::vector<double>(comp.classes.size(), 0.0));
  if (active.empty()) return plan;

  if (active.size() == 1) {
    const auto& ci = active.front();
    double prob = 1.0 - net.c[h] * ci.a / ci.p;
    double q = empirical_mixture_cdf(ds, ci.cls).quantile(prob);
    plan.b_local[0] = ci.a * q;
    for (std::size_t t = 0; t < T; ++t) plan.lambda_local[t][ci.local] = q;
    return plan;
  }

  const auto& c1 = active[0];
  const auto& c2 = active[1];
  // capacity-space samples and capacity-unit prices
  std::vector<double> s1, s2;
  for (std::size_t z = 0; z < ds.Z; ++z)
    for (std::size_t t = 0; t < ds.T; ++t) {
      s1.push_back(c1.a * ds.paths[z][t][c1.cls]);
      s2.push_back(c2.a * ds.paths[z][t][c2.cls]);
    }
  double q_cap = two_customer_newsvendor(c1.p / c1.a, c2.p / c2.a, net.c[h], s1, s2);
  plan.b_local[0] = q_cap;
  // split: priority class up to its solo quantile, remainder to the other
  double prob1 = 1.0 - net.c[h] * c1.a / c1.p;
  double q1 = empirical_mixture_cdf(ds, c1.cls).quantile(prob1);
  double lam1 = std::min(q1, q_cap / c1.a);
  double lam2 = std::max(0.0, (q_cap - c1.a * lam1) / c2.a);
  for (std::size_t t = 0; t < T; ++t) {
    plan.lambda_local[t][c1.local] = lam1;
    plan.lambda_local[t][c2.local] = lam2;
  }
  return plan;
}

}  // namespace

HybridResult hybrid_solve(const ServiceNetwork& net, const DemandScenarioSet& ds,
                          const CorrectionOptions& opts) {
  ds.check();
  if (ds.n != net.n) throw std::invalid_argument("scenario class count mismatch");
  HybridResult out;
  out.b.assign(net.m, 0.0);
  out.lambda_hat.T = ds.T;
  out.lambda_hat.n = net.n;
  out.lambda_hat.lambda.assign(ds.T, std::vector<double>(net.n, 0.0));

  for (const NetworkComponent& comp : decompose(net)) {
    ComponentRule rule = classify_component(net, comp);
    ComponentPlan plan;
    switch (rule.kind) {
      case ComponentKind::Case1SingleSingle:
      case ComponentKind::Case2ManySingle: {
        plan.rule = rule;
        plan.method = "quantile";
        QuantileResult q = case1_quantile(net, rule, ds);
        plan.b_local.assign(comp.pools.size(), 0.0);
        for (std::size_t i = 0; i < comp.pools.size(); ++i)
          if (comp.pools[i] == rule.pool) plan.b_local[i] = q.b;
        plan.lambda_local.assign(ds.T, std::vector<double>(1, q.lambda));
        break;
      }
      case ComponentKind::SingleServerMultiCustomer: {
        if (comp.classes.size() == 2) {
          plan = newsvendor_component(net, rule, ds, ds.T);
          break;
        }
        rule.kind = ComponentKind::General;  // >= 3 classes: no closed form
        [[fallthrough]];
      }
      case ComponentKind::General: {
        plan.rule = rule;
        SubNetwork sub = restrict_to(net, comp);
        DemandScenarioSet sub_ds = ds.restrict_classes(comp.classes);
        CorrectionResult res = run_algorithm1(sub.net, sub_ds, opts);
        plan.b_local = res.b_star.b;
        if (res.outcome != CorrectionOutcome::Nonexistent) {
          plan.method = "algorithm1";
          plan.lambda_local = res.lambda_hat->lambda;
        } else {
          plan.method = "saa-flagged";
          plan.flagged = true;
          // no corrected profile exists; report the scenario mean as the
          // (uncorrected) fluid input for this component
          plan.lambda_local.assign(ds.T, std::vector<double>(comp.classes.size(), 0.0));
          for (std::size_t z = 0; z < sub_ds.Z; ++z)
            for (std::size_t t = 0; t < ds.T; ++t)
              for (std::size_t i = 0; i < comp.classes.size(); ++i)
                plan.lambda_local[t][i] += sub_ds.weights[z] * sub_ds.paths[z][t][i];
        }
        break;
      }
    }
    for (std::size_t i = 0; i < comp.pools.size(); ++i)
      out.b[comp.pools[i]] = plan.b_local[i];
    for (std::size_t t = 0; t < ds.T; ++t)
      for (std::size_t i = 0; i < comp.classes.size(); ++i)
        out.lambda_hat.lambda[t][comp.classes[i]] = plan.lambda_local[t][i];
    out.components.push_back(std::move(plan));
  }
  out.lambda_hat.check();
  return out;
}

}  // namespace fluidcorr
