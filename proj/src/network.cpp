#include "fluidcorr/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace fluidcorr {

const char* to_string(ViolationKind k) {
  switch (k) {
    case ViolationKind::DimensionMismatch: return "dimension mismatch";
    case ViolationKind::RoutingColumnNotUnit: return "routing column not unit";
    case ViolationKind::ConsumptionColumnInvalid: return "consumption column invalid";
    case ViolationKind::ClassUnreachable: return "class unreachable";
    case ViolationKind::PoolUnused: return "pool unused";
    case ViolationKind::NegativeEntry: return "negative entry";
  }
  return "?";
}

std::vector<std::size_t> ServiceNetwork::activities_of_pool(std::size_t h) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j)
    if (pool_of[j] == h) out.push_back(j);
  return out;
}

std::vector<std::size_t> ServiceNetwork::activities_of_class(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < k; ++j)
    if (class_of[j] == i) out.push_back(j);
  return out;
}

std::vector<Violation> validate(ServiceNetwork& net) {
  std::vector<Violation> v;
  auto bad_dims = [&]() {
    if (net.R.size() != net.n || net.A.size() != net.m) return true;
    for (const auto& row : net.R)
      if (row.size() != net.k) return true;
    for (const auto& row : net.A)
      if (row.size() != net.k) return true;
    return net.c.size() != net.m || net.p.size() != net.n;
  };
  if (bad_dims()) {
    v.push_back({ViolationKind::DimensionMismatch, "R is n x k, A is m x k, |c|=m, |p|=n"});
    return v;  // nothing else is checkable
  }

  for (std::size_t h = 0; h < net.m; ++h)
    if (net.c[h] < 0.0 || !std::isfinite(net.c[h]))
      v.push_back({ViolationKind::NegativeEntry, "c[" + std::to_string(h) + "]"});
  for (std::size_t i = 0; i < net.n; ++i)
    if (net.p[i] < 0.0 || !std::isfinite(net.p[i]))
      v.push_back({ViolationKind::NegativeEntry, "p[" + std::to_string(i) + "]"});

  net.class_of.assign(net.k, 0);
  net.pool_of.assign(net.k, 0);
  for (std::size_t j = 0; j < net.k; ++j) {
    std::size_t ones = 0, cls = 0;
    bool binary = true;
    for (std::size_t i = 0; i < net.n; ++i) {
      double e = net.R[i][j];
      if (e == 1.0) {
        ++ones;
        cls = i;
      } else if (e != 0.0) {
        binary = false;
      }
    }
    if (!binary || ones != 1)
      v.push_back({ViolationKind::RoutingColumnNotUnit, "activity " + std::to_string(j)});
    else
      net.class_of[j] = cls;

    std::size_t positives = 0, pool = 0;
    bool ok = true;
    for (std::size_t h = 0; h < net.m; ++h) {
      double e = net.A[h][j];
      if (e > 0.0 && std::isfinite(e)) {
        ++positives;
        pool = h;
      } else if (e != 0.0) {
        ok = false;
      }
    }
    if (!ok || positives != 1)
      v.push_back({ViolationKind::ConsumptionColumnInvalid, "activity " + std::to_string(j)});
    else
      net.pool_of[j] = pool;
  }

  for (std::size_t i = 0; i < net.n; ++i) {
    bool served = false;
    for (std::size_t j = 0; j < net.k; ++j) served = served || net.R[i][j] > 0.0;
    if (!served)
      v.push_back({ViolationKind::ClassUnreachable, "class " + std::to_string(i)});
  }
  for (std::size_t h = 0; h < net.m; ++h) {
    bool used = false;
    for (std::size_t j = 0; j < net.k; ++j) used = used || net.A[h][j] > 0.0;
    if (!used)
      v.push_back({ViolationKind::PoolUnused, "pool " + std::to_string(h)});
  }
  return v;
}

ServiceNetwork make_network(std::size_t n, std::size_t m, std::size_t k,
                            std::vector<std::vector<double>> R,
                            std::vector<std::vector<double>> A,
                            std::vector<double> c, std::vector<double> p) {
  ServiceNetwork net;
  net.n = n;
  net.m = m;
  net.k = k;
  net.R = std::move(R);
  net.A = std::move(A);
  net.c = std::move(c);
  net.p = std::move(p);
  auto violations = validate(net);
  if (!violations.empty()) {
    std::string msg = "invalid service network:";
    for (const auto& x : violations)
      msg += std::string(" [") + to_string(x.kind) + ": " + x.detail + "]";
    throw std::invalid_argument(msg);
  }
  return net;
}

std::vector<NetworkComponent> decompose(const ServiceNetwork& net) {
  // BFS on the bipartite graph; nodes 0..m-1 pools, m..m+n-1 classes.
  const std::size_t total = net.m + net.n;
  std::vector<int> label(total, -1);
  int next = 0;
  for (std::size_t start = 0; start < total; ++start) {
    if (label[start] >= 0) continue;
    label[start] = next;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      std::size_t u = q.front();
      q.pop();
      for (std::size_t j = 0; j < net.k; ++j) {
        std::size_t a = net.pool_of[j];
        std::size_t b = net.m + net.class_of[j];
        if (u != a && u != b) continue;
        for (std::size_t w : {a, b}) {
          if (label[w] < 0) {
            label[w] = next;
            q.push(w);
          }
        }
      }
    }
    ++next;
  }
  std::vector<NetworkComponent> comps(static_cast<std::size_t>(next));
  for (std::size_t h = 0; h < net.m; ++h)
    comps[static_cast<std::size_t>(label[h])].pools.push_back(h);
  for (std::size_t i = 0; i < net.n; ++i)
    comps[static_cast<std::size_t>(label[net.m + i])].classes.push_back(i);
  for (std::size_t j = 0; j < net.k; ++j)
    comps[static_cast<std::size_t>(label[net.pool_of[j]])].activities.push_back(j);

  std::sort(comps.begin(), comps.end(),
            [](const NetworkComponent& a, const NetworkComponent& b) {
              std::size_t ka = a.pools.empty() ? ~std::size_t{0} : a.pools.front();
              std::size_t kb = b.pools.empty() ? ~std::size_t{0} : b.pools.front();
              return ka < kb;
            });
  return comps;
}

SubNetwork restrict_to(const ServiceNetwork& net, const NetworkComponent& comp) {
  SubNetwork sub;
  sub.pool_map = comp.pools;
  sub.class_map = comp.classes;
  sub.activity_map = comp.activities;
  std::vector<std::size_t> pool_local(net.m, 0), class_local(net.n, 0);
  for (std::size_t i = 0; i < comp.pools.size(); ++i) pool_local[comp.pools[i]] = i;
  for (std::size_t i = 0; i < comp.classes.size(); ++i) class_local[comp.classes[i]] = i;

  ServiceNetwork& s = sub.net;
  s.n = comp.classes.size();
  s.m = comp.pools.size();
  s.k = comp.activities.size();
  s.R.assign(s.n, std::vector<double>(s.k, 0.0));
  s.A.assign(s.m, std::vector<double>(s.k, 0.0));
  s.c.resize(s.m);
  s.p.resize(s.n);
  s.class_of.resize(s.k);
  s.pool_of.resize(s.k);
  for (std::size_t i = 0; i < s.m; ++i) s.c[i] = net.c[comp.pools[i]];
  for (std::size_t i = 0; i < s.n; ++i) s.p[i] = net.p[comp.classes[i]];
  for (std::size_t jj = 0; jj < s.k; ++jj) {
    std::size_t j = comp.activities[jj];
    std::size_t li = class_local[net.class_of[j]];
    std::size_t lh = pool_local[net.pool_of[j]];
    s.R[li][jj] = 1.0;
    s.A[lh][jj] = net.consumption(j);
    s.class_of[jj] = li;
    s.pool_of[jj] = lh;
  }
  return sub;
}

}  // namespace fluidcorr
