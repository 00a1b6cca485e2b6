#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "swarmalloc/domain.hpp"
#include "swarmalloc/scenario.hpp"
#include "swarmalloc/scoring.hpp"

namespace swarmalloc {

enum class Method { Centralised, FirstFit, Cbba };

std::string to_string(Method method);
// Accepts both the CSV spelling (Centralised, FirstFit, CBBA) and the CLI
// spelling (centralised, first-fit, cbba).
Method method_from_string(const std::string& text);

struct RunRecord {
  int repetition = 0;
  int application_id = 0;
  Method method = Method::Centralised;
  // Wall clock around the allocator call alone. Centralised and first-fit
  // leave it empty when they fail to form any allocation, so failures do not
  // contribute timing samples; CBBA always reports the time its rounds took.
  std::optional<double> elapsed_seconds;
  Outcome outcome = Outcome::Success;
  std::optional<double> cost;
  std::optional<QosBreakdown> qos;
  std::optional<int> rounds;
  std::optional<std::int64_t> messages;
};

struct ExperimentOptions {
  int repetitions = 5;
  // Fresh application sets per repetition, drawn from seed + repetition.
  // Repetition 0 reproduces the scenario's own applications when the
  // scenario came from the generator.
  bool redraw_applications = true;
  bool redraw_capacities = false;
  // Report 0 instead of measured wall time; output becomes reproducible
  // byte for byte.
  bool zero_timing = false;
  std::uint64_t candidate_budget = 100'000'000;
  int max_rounds = 0;
  // A method whose allocator call exceeds this is recorded as timed out and
  // sits out the rest of the experiment.
  double time_budget_seconds = std::numeric_limits<double>::infinity();
  Weights weights;
  NormBounds bounds;
  // Consensus traffic sink; every broadcast snapshot goes out as one JSON
  // line.
  std::ostream* message_trace = nullptr;
};

// Consume the allocation: remaining resources shrink and an edge capacity
// becomes occupied by the application. Allocations never expire; only the
// per-repetition reset returns the resources.
void commit_allocation(const Allocation& alloc, const Application& app,
                       std::vector<Capacity>& caps);

// Sequential experiment. Per repetition every capacity starts back at full
// quota with no occupant, and each method works on its own capacity state so
// methods never disturb one another. Applications run in order; a success is
// committed to that method's state before the next application.
std::vector<RunRecord> run_experiment(const Scenario& scenario,
                                      const std::vector<Method>& methods,
                                      const ExperimentOptions& options = {});

void write_records_csv(std::span<const RunRecord> records,
                       const std::filesystem::path& file);
std::string records_to_csv(std::span<const RunRecord> records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& file);

// The five large-scale shapes, scaled by factor (counts round half up, never
// below 1). Spec i is seeded with seed + i.
std::vector<ScenarioSpec> scale_suite_specs(double factor, std::uint64_t seed,
                                            int repetitions = 5);

struct ScaleScenarioResult {
  ScenarioSpec spec;
  std::vector<RunRecord> records;
};

std::vector<ScaleScenarioResult> run_scale_suite(
    std::span<const ScenarioSpec> specs, const std::vector<Method>& methods,
    const ExperimentOptions& options = {});

}  // namespace swarmalloc
