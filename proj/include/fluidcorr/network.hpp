#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace fluidcorr {

// Service-network topology plus economics. Columns of R and A are activities:
// each activity serves exactly one customer class and draws capacity from
// exactly one server pool, so class_of / pool_of are total once validated.
// Immutable after construction; safe to share across threads.
struct ServiceNetwork {
  std::size_t n = 0;  // customer classes
  std::size_t m = 0;  // server pools
  std::size_t k = 0;  // activities
  std::vector<std::vector<double>> R;  // n x k, binary
  std::vector<std::vector<double>> A;  // m x k, one positive entry per column
  std::vector<double> c;               // per-period staffing cost, length m
  std::vector<double> p;               // abandonment penalty, length n
  std::vector<std::size_t> class_of;   // activity -> class
  std::vector<std::size_t> pool_of;    // activity -> pool

  // A_{pool_of(j), j}
  double consumption(std::size_t j) const { return A[pool_of[j]][j]; }
  // (A^T c)_j for the single positive entry of column j
  double effective_cost(std::size_t j) const {
    return consumption(j) * c[pool_of[j]];
  }
  std::vector<std::size_t> activities_of_pool(std::size_t h) const;
  std::vector<std::size_t> activities_of_class(std::size_t i) const;
};

enum class ViolationKind {
  DimensionMismatch,
  RoutingColumnNotUnit,
  ConsumptionColumnInvalid,
  ClassUnreachable,
  PoolUnused,
  NegativeEntry,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

const char* to_string(ViolationKind k);

// Builds class_of / pool_of when the column structure allows it. Returns all
// violated invariants; empty means valid.
std::vector<Violation> validate(ServiceNetwork& net);

// Throwing convenience used by constructors along the CLI path.
ServiceNetwork make_network(std::size_t n, std::size_t m, std::size_t k,
                            std::vector<std::vector<double>> R,
                            std::vector<std::vector<double>> A,
                            std::vector<double> c, std::vector<double> p);

struct NetworkComponent {
  std::vector<std::size_t> pools;
  std::vector<std::size_t> classes;
  std::vector<std::size_t> activities;
};

// Connected components of the pool/class bipartite graph, ordered by their
// smallest pool index so hybrid solves are reproducible.
std::vector<NetworkComponent> decompose(const ServiceNetwork& net);

// The sub-network induced by one component, with index maps back to the
// parent (local index -> global index).
struct SubNetwork {
  ServiceNetwork net;
  std::vector<std::size_t> pool_map;
  std::vector<std::size_t> class_map;
  std::vector<std::size_t> activity_map;
};

SubNetwork restrict_to(const ServiceNetwork& net, const NetworkComponent& comp);

}  // namespace fluidcorr
