#include "swarmalloc/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace swarmalloc {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void Weights::validate() const {
  if (price < 0.0 || energy < 0.0 || bandwidth < 0.0 || latency < 0.0)
    throw std::invalid_argument("weights must be non-negative");
  const double sum = price + energy + bandwidth + latency;
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("weights must sum to 1");
}

void NormBounds::validate() const {
  for (const Bound& b : {price, energy, bandwidth, latency})
    if (!(b.min < b.max))
      throw std::invalid_argument("normalization bound needs min < max");
}

bool feasible(const Microservice& ms, const Capacity& cap, int app_id) {
  if (ms.cpu > cap.remaining.cpu || ms.ram > cap.remaining.ram ||
      ms.storage > cap.remaining.storage)
    return false;
  if (ms.location != Location::Worldwide && ms.location != cap.location)
    return false;
  if (cap.kind == CapacityKind::Edge && cap.occupied_by.has_value() &&
      *cap.occupied_by != app_id)
    return false;
  return true;
}

double raw_price(const Microservice& ms, const Capacity& cap) {
  return cap.qos.price * (ms.cpu + ms.ram) * ms.running_time;
}

double raw_energy(const Microservice& ms, const Capacity& cap) {
  return cap.qos.energy * (ms.cpu + ms.ram) * ms.running_time;
}

NormalizedQos normalized_qos(const Microservice& ms, const Capacity& cap,
                             const NormBounds& nb) {
  NormalizedQos out;
  const double scale = (ms.cpu + ms.ram) * ms.running_time;
  const double price_max = nb.price.max * scale;
  const double energy_max = nb.energy.max * scale;
  out.price = price_max > 0.0 ? clamp01(raw_price(ms, cap) / price_max) : 0.0;
  out.energy = energy_max > 0.0 ? clamp01(raw_energy(ms, cap) / energy_max) : 0.0;
  out.bandwidth = clamp01((nb.bandwidth.max - cap.qos.bandwidth) /
                          (nb.bandwidth.max - nb.bandwidth.min));
  out.latency = clamp01((cap.qos.latency - nb.latency.min) /
                        (nb.latency.max - nb.latency.min));
  return out;
}

double ms_cost(const Microservice& ms, const Capacity& cap, const Weights& w,
               const NormBounds& nb) {
  const NormalizedQos n = normalized_qos(ms, cap, nb);
  return w.price * n.price + w.energy * n.energy + w.bandwidth * n.bandwidth +
         w.latency * n.latency;
}

AllocationScore score_assignment(const Application& app,
                                 const std::map<int, int>& assignments,
                                 std::span<const Capacity> caps,
                                 const Weights& w, const NormBounds& nb) {
  std::map<int, int> per_capacity;
  for (const auto& [ms_id, cap_id] : assignments) ++per_capacity[cap_id];

  AllocationScore score;
  for (const Microservice& ms : app.microservices) {
    const auto it = assignments.find(ms.id);
    if (it == assignments.end())
      throw std::invalid_argument("assignment misses microservice " +
                                  std::to_string(ms.id));
    const Capacity* cap = find_capacity(caps, it->second);
    if (cap == nullptr)
      throw std::out_of_range("assignment refers to unknown capacity id " +
                              std::to_string(it->second));
    NormalizedQos n = normalized_qos(ms, *cap, nb);
    if (per_capacity[cap->id] >= 2) n.price *= 1.0 - cap->discount;
    score.breakdown.price += n.price;
    score.breakdown.energy += n.energy;
    score.breakdown.bandwidth += n.bandwidth;
    score.breakdown.latency += n.latency;
  }
  score.total_cost = w.price * score.breakdown.price +
                     w.energy * score.breakdown.energy +
                     w.bandwidth * score.breakdown.bandwidth +
                     w.latency * score.breakdown.latency;
  return score;
}

double allocation_cost(const Allocation& alloc, const Application& app,
                       std::span<const Capacity> caps, const Weights& w,
                       const NormBounds& nb) {
  return score_assignment(app, alloc.assignments, caps, w, nb).total_cost;
}

double utility(const Microservice& ms, const Capacity& cap, int app_id,
               const Weights& w, const NormBounds& nb) {
  if (!feasible(ms, cap, app_id)) return 0.0;
  return 1.0 - ms_cost(ms, cap, w, nb);
}

double marginal_utility(const Microservice& ms, std::span<const int> bundle,
                        const Capacity& cap, int app_id, const Weights& w,
                        const NormBounds& nb) {
  (void)bundle;
  return utility(ms, cap, app_id, w, nb);
}

}  // namespace swarmalloc
