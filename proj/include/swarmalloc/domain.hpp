#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swarmalloc {

enum class Location { EU, US, Asia, Worldwide };

enum class CapacityKind { Cloud, Edge };

enum class Outcome {
  Success,
  NoValidAllocation,
  EnumerationBudgetExceeded,
  ConvergenceTimeout,
  TimeBudgetExceeded,
};

std::string to_string(Location value);
std::string to_string(CapacityKind value);
std::string to_string(Outcome value);
Location location_from_string(const std::string& text);
CapacityKind capacity_kind_from_string(const std::string& text);
Outcome outcome_from_string(const std::string& text);

struct Microservice {
  int id = 0;
  int cpu = 0;
  int ram = 0;
  int storage = 0;
  Location location = Location::Worldwide;
  int running_time = 0;

  bool operator==(const Microservice&) const = default;
};

struct Application {
  int id = 0;
  std::vector<Microservice> microservices;

  bool operator==(const Application&) const = default;
};

struct QosProfile {
  double price = 0.0;
  double energy = 0.0;
  double bandwidth = 0.0;
  double latency = 0.0;

  bool operator==(const QosProfile&) const = default;
};

struct Resources {
  int cpu = 0;
  int ram = 0;
  int storage = 0;

  bool operator==(const Resources&) const = default;
};

struct Capacity {
  int id = 0;
  CapacityKind kind = CapacityKind::Cloud;
  int cpu_quota = 0;
  int ram_quota = 0;
  int storage_quota = 0;
  Location location = Location::EU;
  QosProfile qos;
  double discount = 0.0;
  Resources remaining;
  // Edge only: id of the application holding this capacity. Cloud never sets it.
  std::optional<int> occupied_by;

  bool operator==(const Capacity&) const = default;
};

struct QosBreakdown {
  double price = 0.0;
  double energy = 0.0;
  double bandwidth = 0.0;
  double latency = 0.0;

  bool operator==(const QosBreakdown&) const = default;
};

struct Allocation {
  int application_id = 0;
  std::map<int, int> assignments;  // microservice id -> capacity id
  double total_cost = 0.0;
  QosBreakdown qos_breakdown;
};

// Throws std::invalid_argument when a structural invariant is broken.
void validate(const Microservice& ms);
void validate(const Application& app);
void validate(const Capacity& cap);

const Capacity* find_capacity(std::span<const Capacity> caps, int capacity_id);

// Views sorted by id; the canonical processing order for allocators.
std::vector<const Microservice*> microservices_by_id(const Application& app);
std::vector<const Capacity*> capacities_by_id(std::span<const Capacity> caps);

// True iff every microservice is assigned, locations and edge occupancy allow
// each placement, and the summed demands per capacity fit its remaining
// resources. Throws std::out_of_range for an assignment to an unknown
// capacity id.
bool validate_allocation(const Allocation& alloc, const Application& app,
                         std::span<const Capacity> caps);

}  // namespace swarmalloc
