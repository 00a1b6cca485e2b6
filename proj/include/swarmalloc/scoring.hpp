#pragma once

#include <map>
#include <span>

#include "swarmalloc/domain.hpp"

namespace swarmalloc {

struct Weights {
  double price = 0.25;
  double energy = 0.25;
  double bandwidth = 0.25;
  double latency = 0.25;

  // Throws std::invalid_argument unless all weights are >= 0 and sum to 1
  // within 1e-9.
  void validate() const;

  static Weights balanced() { return {}; }
};

struct Bound {
  double min = 0.0;
  double max = 1.0;
};

// Static global bounds used for min-max normalization. Defaults cover the
// full range the capacity generator can produce, so normalized values stay
// in [0, 1] without per-scenario rescaling.
struct NormBounds {
  Bound price{0.05, 1.0};
  Bound energy{1.0, 10.0};
  Bound bandwidth{100.0, 1000.0};
  Bound latency{50.0, 200.0};

  void validate() const;

  static NormBounds defaults() { return {}; }
};

// Demand fits cap.remaining, the location matches (or the microservice is
// Worldwide), and an edge capacity is either free or already held by app_id.
bool feasible(const Microservice& ms, const Capacity& cap, int app_id);

double raw_price(const Microservice& ms, const Capacity& cap);
double raw_energy(const Microservice& ms, const Capacity& cap);

struct NormalizedQos {
  double price = 0.0;
  double energy = 0.0;
  double bandwidth = 0.0;
  double latency = 0.0;
};

// Each term clamped to [0, 1]. Price and energy divide the raw value by the
// theoretical maximum for this microservice (upper bound times the same
// demand and time); bandwidth is inverted so that higher bandwidth means
// lower cost.
NormalizedQos normalized_qos(const Microservice& ms, const Capacity& cap,
                             const NormBounds& nb);

// Weighted sum of the normalized terms; 0 is best, 1 is worst.
double ms_cost(const Microservice& ms, const Capacity& cap, const Weights& w,
               const NormBounds& nb);

struct AllocationScore {
  double total_cost = 0.0;
  QosBreakdown breakdown;
};

// Sums ms_cost over the assignment. When a capacity hosts two or more
// microservices of this application its price terms are multiplied by
// (1 - discount). The breakdown holds the per-attribute normalized sums
// after the discount, so total_cost == dot(weights, breakdown).
AllocationScore score_assignment(const Application& app,
                                 const std::map<int, int>& assignments,
                                 std::span<const Capacity> caps,
                                 const Weights& w, const NormBounds& nb);

// Throws std::invalid_argument when the allocation does not cover every
// microservice of the application.
double allocation_cost(const Allocation& alloc, const Application& app,
                       std::span<const Capacity> caps, const Weights& w,
                       const NormBounds& nb);

// 1 - ms_cost when feasible, otherwise 0 (no bid). The discount plays no
// part here, which keeps marginal gains independent of the bundle.
double utility(const Microservice& ms, const Capacity& cap, int app_id,
               const Weights& w, const NormBounds& nb);

// Identical to utility for every bundle; the parameter exists so callers
// can state the diminishing-marginal-gains contract explicitly.
double marginal_utility(const Microservice& ms, std::span<const int> bundle,
                        const Capacity& cap, int app_id, const Weights& w,
                        const NormBounds& nb);

}  // namespace swarmalloc
