#include "swarmalloc/domain.hpp"

#include <algorithm>
#include <stdexcept>

namespace swarmalloc {

std::string to_string(Location value) {
  switch (value) {
    case Location::EU: return "EU";
    case Location::US: return "US";
    case Location::Asia: return "Asia";
    case Location::Worldwide: return "Worldwide";
  }
  throw std::invalid_argument("bad Location");
}

std::string to_string(CapacityKind value) {
  switch (value) {
    case CapacityKind::Cloud: return "Cloud";
    case CapacityKind::Edge: return "Edge";
  }
  throw std::invalid_argument("bad CapacityKind");
}

std::string to_string(Outcome value) {
  switch (value) {
    case Outcome::Success: return "Success";
    case Outcome::NoValidAllocation: return "NoValidAllocation";
    case Outcome::EnumerationBudgetExceeded: return "EnumerationBudgetExceeded";
    case Outcome::ConvergenceTimeout: return "ConvergenceTimeout";
    case Outcome::TimeBudgetExceeded: return "TimeBudgetExceeded";
  }
  throw std::invalid_argument("bad Outcome");
}

Location location_from_string(const std::string& text) {
  if (text == "EU") return Location::EU;
  if (text == "US") return Location::US;
  if (text == "Asia") return Location::Asia;
  if (text == "Worldwide") return Location::Worldwide;
  throw std::invalid_argument("unknown location: " + text);
}

CapacityKind capacity_kind_from_string(const std::string& text) {
  if (text == "Cloud") return CapacityKind::Cloud;
  if (text == "Edge") return CapacityKind::Edge;
  throw std::invalid_argument("unknown capacity kind: " + text);
}

Outcome outcome_from_string(const std::string& text) {
  if (text == "Success") return Outcome::Success;
  if (text == "NoValidAllocation") return Outcome::NoValidAllocation;
  if (text == "EnumerationBudgetExceeded") return Outcome::EnumerationBudgetExceeded;
  if (text == "ConvergenceTimeout") return Outcome::ConvergenceTimeout;
  if (text == "TimeBudgetExceeded") return Outcome::TimeBudgetExceeded;
  throw std::invalid_argument("unknown outcome: " + text);
}

void validate(const Microservice& ms) {
  if (ms.id < 0) throw std::invalid_argument("microservice id must be >= 0");
  if (ms.cpu <= 0 || ms.ram <= 0 || ms.storage <= 0)
    throw std::invalid_argument("microservice demands must be positive");
  if (ms.running_time <= 0)
    throw std::invalid_argument("microservice running_time must be positive");
}

void validate(const Application& app) {
  if (app.id < 0) throw std::invalid_argument("application id must be >= 0");
  if (app.microservices.empty())
    throw std::invalid_argument("application must contain at least one microservice");
  for (std::size_t i = 0; i < app.microservices.size(); ++i) {
    validate(app.microservices[i]);
    for (std::size_t j = i + 1; j < app.microservices.size(); ++j)
      if (app.microservices[i].id == app.microservices[j].id)
        throw std::invalid_argument("duplicate microservice id within application");
  }
}

void validate(const Capacity& cap) {
  if (cap.id < 0) throw std::invalid_argument("capacity id must be >= 0");
  if (cap.cpu_quota <= 0 || cap.ram_quota <= 0 || cap.storage_quota <= 0)
    throw std::invalid_argument("capacity quotas must be positive");
  if (cap.location == Location::Worldwide)
    throw std::invalid_argument("capacity location must be a concrete region");
  if (cap.discount < 0.0 || cap.discount > 1.0)
    throw std::invalid_argument("discount must lie in [0, 1]");
  if (cap.remaining.cpu < 0 || cap.remaining.cpu > cap.cpu_quota ||
      cap.remaining.ram < 0 || cap.remaining.ram > cap.ram_quota ||
      cap.remaining.storage < 0 || cap.remaining.storage > cap.storage_quota)
    throw std::invalid_argument("remaining resources must lie within quotas");
  if (cap.kind == CapacityKind::Cloud && cap.occupied_by.has_value())
    throw std::invalid_argument("cloud capacity cannot be occupied");
}

const Capacity* find_capacity(std::span<const Capacity> caps, int capacity_id) {
  for (const Capacity& cap : caps)
    if (cap.id == capacity_id) return &cap;
  return nullptr;
}

std::vector<const Microservice*> microservices_by_id(const Application& app) {
  std::vector<const Microservice*> sorted;
  sorted.reserve(app.microservices.size());
  for (const Microservice& ms : app.microservices) sorted.push_back(&ms);
  std::sort(sorted.begin(), sorted.end(),
            [](const Microservice* a, const Microservice* b) {
              return a->id < b->id;
            });
  return sorted;
}

std::vector<const Capacity*> capacities_by_id(std::span<const Capacity> caps) {
  std::vector<const Capacity*> sorted;
  sorted.reserve(caps.size());
  for (const Capacity& cap : caps) sorted.push_back(&cap);
  std::sort(sorted.begin(), sorted.end(),
            [](const Capacity* a, const Capacity* b) { return a->id < b->id; });
  return sorted;
}

bool validate_allocation(const Allocation& alloc, const Application& app,
                         std::span<const Capacity> caps) {
  std::map<int, Resources> load;  // capacity id -> summed demands
  for (const auto& [ms_id, cap_id] : alloc.assignments) {
    if (find_capacity(caps, cap_id) == nullptr)
      throw std::out_of_range("assignment refers to unknown capacity id " +
                              std::to_string(cap_id));
    bool known_ms = false;
    for (const Microservice& ms : app.microservices) {
      if (ms.id != ms_id) continue;
      known_ms = true;
      Resources& used = load[cap_id];
      used.cpu += ms.cpu;
      used.ram += ms.ram;
      used.storage += ms.storage;
      const Capacity& cap = *find_capacity(caps, cap_id);
      if (ms.location != Location::Worldwide && ms.location != cap.location)
        return false;
      if (cap.kind == CapacityKind::Edge && cap.occupied_by.has_value() &&
          *cap.occupied_by != app.id)
        return false;
    }
    if (!known_ms) return false;
  }
  for (const Microservice& ms : app.microservices)
    if (!alloc.assignments.contains(ms.id)) return false;
  for (const auto& [cap_id, used] : load) {
    const Capacity& cap = *find_capacity(caps, cap_id);
    if (used.cpu > cap.remaining.cpu || used.ram > cap.remaining.ram ||
        used.storage > cap.remaining.storage)
      return false;
  }
  return true;
}

}  // namespace swarmalloc
