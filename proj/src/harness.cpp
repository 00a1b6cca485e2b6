#include "swarmalloc/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "swarmalloc/baselines.hpp"
#include "swarmalloc/simnet.hpp"
#include "swarmalloc/text.hpp"

namespace swarmalloc {

namespace {

constexpr char kCsvHeader[] =
    "repetition,application_id,method,elapsed_seconds,outcome,cost,price,"
    "energy,bandwidth,latency,rounds,messages";

std::vector<Capacity> reset_capacities(const std::vector<Capacity>& caps) {
  std::vector<Capacity> fresh = caps;
  for (Capacity& cap : fresh) {
    cap.remaining = {cap.cpu_quota, cap.ram_quota, cap.storage_quota};
    cap.occupied_by.reset();
  }
  return fresh;
}

double cloud_fraction_of(const std::vector<Capacity>& caps) {
  if (caps.empty()) return 0.5;
  int cloud = 0;
  for (const Capacity& cap : caps)
    if (cap.kind == CapacityKind::Cloud) ++cloud;
  return static_cast<double>(cloud) / static_cast<double>(caps.size());
}

struct MethodRun {
  Outcome outcome = Outcome::NoValidAllocation;
  std::optional<Allocation> allocation;
  std::optional<int> rounds;
  std::optional<std::int64_t> messages;
};

MethodRun dispatch(Method method, const Application& app,
                   std::span<const Capacity> caps,
                   const ExperimentOptions& options) {
  MethodRun run;
  switch (method) {
    case Method::Centralised: {
      ExhaustiveResult result = centralised_exhaustive(
          app, caps, options.weights, options.bounds,
          ExhaustiveOptions{options.candidate_budget});
      run.outcome = result.outcome;
      run.allocation = std::move(result.allocation);
      break;
    }
    case Method::FirstFit: {
      FirstFitResult result =
          first_fit(app, caps, options.weights, options.bounds);
      run.outcome = result.outcome;
      run.allocation = std::move(result.allocation);
      break;
    }
    case Method::Cbba: {
      auto [result, stats] =
          allocate_cbba(app, caps, options.weights, options.bounds,
                        CbbaOptions{options.max_rounds, options.message_trace});
      run.outcome = result.outcome;
      run.allocation = std::move(result.allocation);
      run.rounds = stats.rounds;
      run.messages = stats.messages_sent;
      break;
    }
  }
  return run;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string to_string(Method method) {
  switch (method) {
    case Method::Centralised: return "Centralised";
    case Method::FirstFit: return "FirstFit";
    case Method::Cbba: return "CBBA";
  }
  throw std::invalid_argument("bad Method");
}

Method method_from_string(const std::string& text) {
  if (text == "Centralised" || text == "centralised") return Method::Centralised;
  if (text == "FirstFit" || text == "first-fit") return Method::FirstFit;
  if (text == "CBBA" || text == "cbba") return Method::Cbba;
  throw std::invalid_argument("unknown method: " + text);
}

void commit_allocation(const Allocation& alloc, const Application& app,
                       std::vector<Capacity>& caps) {
  for (const auto& [ms_id, cap_id] : alloc.assignments) {
    Capacity* cap = nullptr;
    for (Capacity& c : caps)
      if (c.id == cap_id) cap = &c;
    if (cap == nullptr)
      throw std::out_of_range("commit to unknown capacity id " +
                              std::to_string(cap_id));
    const Microservice* ms = nullptr;
    for (const Microservice& m : app.microservices)
      if (m.id == ms_id) ms = &m;
    if (ms == nullptr)
      throw std::invalid_argument("commit for unknown microservice id " +
                                  std::to_string(ms_id));
    cap->remaining.cpu -= ms->cpu;
    cap->remaining.ram -= ms->ram;
    cap->remaining.storage -= ms->storage;
    if (cap->remaining.cpu < 0 || cap->remaining.ram < 0 ||
        cap->remaining.storage < 0)
      throw std::logic_error("commit overcommitted capacity " +
                             std::to_string(cap_id));
    if (cap->kind == CapacityKind::Edge) cap->occupied_by = app.id;
  }
}

std::vector<RunRecord> run_experiment(const Scenario& scenario,
                                      const std::vector<Method>& methods,
                                      const ExperimentOptions& options) {
  options.weights.validate();
  options.bounds.validate();
  if (options.repetitions <= 0)
    throw std::invalid_argument("repetitions must be positive");

  const double cloud_fraction = cloud_fraction_of(scenario.capacities);
  std::vector<RunRecord> records;
  std::map<Method, bool> timed_out;
  for (Method method : methods) timed_out[method] = false;

  for (int rep = 0; rep < options.repetitions; ++rep) {
    std::vector<Application> applications = scenario.applications;
    std::vector<Capacity> capacity_template = scenario.capacities;
    if (options.redraw_applications || options.redraw_capacities) {
      ScenarioSpec spec;
      spec.n_applications = static_cast<int>(scenario.applications.size());
      spec.n_capacities = static_cast<int>(scenario.capacities.size());
      spec.seed = scenario.seed + static_cast<std::uint64_t>(rep);
      spec.cloud_fraction = cloud_fraction;
      Scenario redrawn = generate_scenario(spec);
      if (options.redraw_applications)
        applications = std::move(redrawn.applications);
      if (options.redraw_capacities)
        capacity_template = std::move(redrawn.capacities);
    }

    std::map<Method, std::vector<Capacity>> states;
    for (Method method : methods)
      states[method] = reset_capacities(capacity_template);

    for (const Application& app : applications) {
      for (Method method : methods) {
        if (timed_out[method]) continue;
        std::vector<Capacity>& caps = states[method];

        const auto start = std::chrono::steady_clock::now();
        MethodRun run = dispatch(method, app, caps, options);
        const auto stop = std::chrono::steady_clock::now();
        const double elapsed =
            std::chrono::duration<double>(stop - start).count();

        RunRecord record;
        record.repetition = rep;
        record.application_id = app.id;
        record.method = method;
        record.rounds = run.rounds;
        record.messages = run.messages;

        if (elapsed > options.time_budget_seconds) {
          record.outcome = Outcome::TimeBudgetExceeded;
          record.elapsed_seconds = options.zero_timing ? 0.0 : elapsed;
          timed_out[method] = true;
          records.push_back(std::move(record));
          continue;
        }

        record.outcome = run.outcome;
        const bool skip_elapsed = method != Method::Cbba &&
                                  run.outcome == Outcome::NoValidAllocation;
        if (!skip_elapsed)
          record.elapsed_seconds = options.zero_timing ? 0.0 : elapsed;
        if (run.outcome == Outcome::Success) {
          record.cost = run.allocation->total_cost;
          record.qos = run.allocation->qos_breakdown;
          commit_allocation(*run.allocation, app, caps);
        }
        records.push_back(std::move(record));
      }
    }
  }
  return records;
}

std::string records_to_csv(std::span<const RunRecord> records) {
  std::string out = kCsvHeader;
  out += '\n';
  for (const RunRecord& r : records) {
    out += std::to_string(r.repetition);
    out += ',';
    out += std::to_string(r.application_id);
    out += ',';
    out += to_string(r.method);
    out += ',';
    if (r.elapsed_seconds) out += format_double(*r.elapsed_seconds);
    out += ',';
    out += to_string(r.outcome);
    out += ',';
    if (r.cost) out += format_double(*r.cost);
    out += ',';
    if (r.qos) out += format_double(r.qos->price);
    out += ',';
    if (r.qos) out += format_double(r.qos->energy);
    out += ',';
    if (r.qos) out += format_double(r.qos->bandwidth);
    out += ',';
    if (r.qos) out += format_double(r.qos->latency);
    out += ',';
    if (r.rounds) out += std::to_string(*r.rounds);
    out += ',';
    if (r.messages) out += std::to_string(*r.messages);
    out += '\n';
  }
  return out;
}

void write_records_csv(std::span<const RunRecord> records,
                       const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << records_to_csv(records);
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("unexpected record CSV header in " +
                             file.string());
  std::vector<RunRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::vector<std::string> f = split_csv_line(line);
    if (f.size() != 12)
      throw std::runtime_error("malformed record row: " + line);
    RunRecord r;
    r.repetition = parse_int(f[0]);
    r.application_id = parse_int(f[1]);
    r.method = method_from_string(f[2]);
    if (!f[3].empty()) r.elapsed_seconds = parse_double(f[3]);
    r.outcome = outcome_from_string(f[4]);
    if (!f[5].empty()) r.cost = parse_double(f[5]);
    if (!f[6].empty()) {
      QosBreakdown qos;
      qos.price = parse_double(f[6]);
      qos.energy = parse_double(f[7]);
      qos.bandwidth = parse_double(f[8]);
      qos.latency = parse_double(f[9]);
      r.qos = qos;
    }
    if (!f[10].empty()) r.rounds = parse_int(f[10]);
    if (!f[11].empty()) r.messages = parse_int64(f[11]);
    records.push_back(std::move(r));
  }
  return records;
}

std::vector<ScenarioSpec> scale_suite_specs(double factor, std::uint64_t seed,
                                            int repetitions) {
  if (factor <= 0.0) throw std::invalid_argument("factor must be positive");
  const int shapes[5][2] = {
      {10, 50}, {50, 250}, {100, 500}, {500, 1000}, {1000, 3000}};
  std::vector<ScenarioSpec> specs;
  for (int i = 0; i < 5; ++i) {
    ScenarioSpec spec;
    spec.n_applications = std::max(
        1, static_cast<int>(std::llround(shapes[i][0] * factor)));
    spec.n_capacities = std::max(
        1, static_cast<int>(std::llround(shapes[i][1] * factor)));
    spec.seed = seed + static_cast<std::uint64_t>(i);
    spec.repetitions = repetitions;
    specs.push_back(spec);
  }
  return specs;
}

std::vector<ScaleScenarioResult> run_scale_suite(
    std::span<const ScenarioSpec> specs, const std::vector<Method>& methods,
    const ExperimentOptions& options) {
  std::vector<ScaleScenarioResult> results;
  for (const ScenarioSpec& spec : specs) {
    ExperimentOptions per_scenario = options;
    per_scenario.repetitions = spec.repetitions;
    ScaleScenarioResult result;
    result.spec = spec;
    result.records =
        run_experiment(generate_scenario(spec), methods, per_scenario);
    results.push_back(std::move(result));
  }
  return results;
}

}  // namespace swarmalloc
