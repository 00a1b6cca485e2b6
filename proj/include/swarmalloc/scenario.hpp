#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "swarmalloc/domain.hpp"

namespace swarmalloc {

using Rng = std::mt19937_64;

struct ScenarioSpec {
  int n_applications = 0;
  int n_capacities = 0;
  std::uint64_t seed = 0;
  double cloud_fraction = 0.5;
  int repetitions = 5;
};

struct Scenario {
  std::vector<Application> applications;
  std::vector<Capacity> capacities;
  std::uint64_t seed = 0;
};

// One application of 1..5 microservices. Integer fields are drawn uniformly
// over inclusive ranges; the location is EU/US/Asia with weight 0.2 each and
// Worldwide with weight 0.4.
Application generate_application(Rng& rng, int id = 0);

// Quotas are powers of two; the exponent range and the price range depend on
// the capacity kind and region. Real-valued fields are drawn from half-open
// ranges.
Capacity generate_capacity(Rng& rng, CapacityKind kind, int id = 0);

// Applications first, then capacities, from a single generator seeded with
// spec.seed. round(cloud_fraction * n_capacities) capacities are Cloud (half
// rounds up) and come before the Edge ones.
Scenario generate_scenario(const ScenarioSpec& spec);

std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

void save_scenario(const Scenario& scenario, const std::filesystem::path& file);
Scenario load_scenario(const std::filesystem::path& file);

}  // namespace swarmalloc
