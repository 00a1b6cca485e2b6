#include <filesystem>
#include <fstream>
#include <map>
#include <tuple>
#include <vector>

#include "doctest.h"
#include "swarmalloc/harness.hpp"

using namespace swarmalloc;

namespace {

Capacity cap_with(int id, int cpu, int ram, int storage,
                  CapacityKind kind = CapacityKind::Cloud,
                  Location loc = Location::EU,
                  QosProfile qos = {0.5, 5.0, 500.0, 100.0}) {
  Capacity cap;
  cap.id = id;
  cap.kind = kind;
  cap.cpu_quota = cpu;
  cap.ram_quota = ram;
  cap.storage_quota = storage;
  cap.location = loc;
  cap.qos = qos;
  cap.remaining = {cpu, ram, storage};
  return cap;
}

Application one_ms_app(int id, int cpu) {
  return {id, {{0, cpu, 1, 1, Location::Worldwide, 1}}};
}

const std::vector<Method> kAllMethods{Method::Centralised, Method::FirstFit,
                                      Method::Cbba};

ExperimentOptions fixed_options(int repetitions = 1) {
  ExperimentOptions options;
  options.repetitions = repetitions;
  options.redraw_applications = false;
  options.zero_timing = true;
  return options;
}

using RunKey = std::tuple<int, int, Method>;

std::map<RunKey, const RunRecord*> by_key(const std::vector<RunRecord>& records) {
  std::map<RunKey, const RunRecord*> out;
  for (const RunRecord& r : records)
    out[{r.repetition, r.application_id, r.method}] = &r;
  return out;
}

}  // namespace

TEST_CASE("method names round trip through both spellings") {
  for (Method m : kAllMethods) CHECK(method_from_string(to_string(m)) == m);
  CHECK(method_from_string("centralised") == Method::Centralised);
  CHECK(method_from_string("first-fit") == Method::FirstFit);
  CHECK(method_from_string("cbba") == Method::Cbba);
  CHECK_THROWS_AS(method_from_string("greedy"), std::invalid_argument);
}

TEST_CASE("committing an allocation consumes resources and claims edges") {
  Application app{4, {{0, 2, 1, 1, Location::Worldwide, 1},
                      {1, 1, 1, 1, Location::Worldwide, 1}}};
  std::vector<Capacity> caps{cap_with(0, 8, 8, 8),
                             cap_with(1, 4, 4, 4, CapacityKind::Edge)};
  Allocation alloc;
  alloc.application_id = 4;
  alloc.assignments = {{0, 0}, {1, 1}};
  commit_allocation(alloc, app, caps);
  CHECK((caps[0].remaining == Resources{6, 7, 7}));
  CHECK((caps[1].remaining == Resources{3, 3, 3}));
  CHECK_FALSE(caps[0].occupied_by.has_value());
  CHECK(caps[1].occupied_by == 4);

  Allocation unknown_cap;
  unknown_cap.assignments = {{0, 9}};
  CHECK_THROWS_AS(commit_allocation(unknown_cap, app, caps),
                  std::out_of_range);

  std::vector<Capacity> tiny{cap_with(0, 1, 1, 1)};
  Allocation overcommit;
  overcommit.assignments = {{0, 0}};
  CHECK_THROWS_AS(commit_allocation(overcommit, app, tiny), std::logic_error);
}

TEST_CASE("records arrive repetition-major in the requested method order") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 1), one_ms_app(1, 1)};
  sc.capacities = {cap_with(0, 8, 8, 8), cap_with(1, 8, 8, 8)};

  const std::vector<RunRecord> records =
      run_experiment(sc, kAllMethods, fixed_options(2));
  REQUIRE(records.size() == 2 * 2 * 3);
  std::size_t i = 0;
  for (int rep = 0; rep < 2; ++rep)
    for (int app = 0; app < 2; ++app)
      for (Method m : kAllMethods) {
        CAPTURE(i);
        CHECK(records[i].repetition == rep);
        CHECK(records[i].application_id == app);
        CHECK(records[i].method == m);
        CHECK(records[i].outcome == Outcome::Success);
        CHECK(records[i].cost.has_value());
        CHECK(records[i].qos.has_value());
        CHECK(records[i].elapsed_seconds == 0.0);
        CHECK(records[i].rounds.has_value() == (m == Method::Cbba));
        CHECK(records[i].messages.has_value() == (m == Method::Cbba));
        ++i;
      }
}

TEST_CASE("methods never see each other's commitments") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 3), one_ms_app(1, 3)};
  sc.capacities = {cap_with(0, 4, 8, 8)};

  const auto forward = by_key(run_experiment(sc, kAllMethods, fixed_options()));
  const std::vector<Method> reversed{Method::Cbba, Method::FirstFit,
                                     Method::Centralised};
  const auto backward = by_key(run_experiment(sc, reversed, fixed_options()));

  REQUIRE(forward.size() == backward.size());
  for (const auto& [key, record] : forward) {
    const RunRecord* other = backward.at(key);
    CHECK(record->outcome == other->outcome);
    CHECK(record->cost == other->cost);
  }
  // The single capacity only hosts the first application.
  for (Method m : kAllMethods) {
    CHECK(forward.at({0, 0, m})->outcome == Outcome::Success);
    CHECK(forward.at({0, 1, m})->outcome == Outcome::NoValidAllocation);
  }
}

TEST_CASE("failed centralised runs carry no timing, failed consensus runs do") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 3), one_ms_app(1, 3)};
  sc.capacities = {cap_with(0, 4, 8, 8)};

  ExperimentOptions options = fixed_options();
  options.zero_timing = false;
  const auto runs = by_key(run_experiment(sc, kAllMethods, options));
  CHECK_FALSE(runs.at({0, 1, Method::Centralised})->elapsed_seconds.has_value());
  CHECK_FALSE(runs.at({0, 1, Method::FirstFit})->elapsed_seconds.has_value());
  CHECK(runs.at({0, 1, Method::Cbba})->elapsed_seconds.has_value());
  for (Method m : kAllMethods)
    CHECK(runs.at({0, 0, m})->elapsed_seconds.value() > 0.0);
}

TEST_CASE("an edge capacity committed to one application rejects the next") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 2), one_ms_app(1, 2)};
  sc.capacities = {cap_with(0, 8, 8, 8, CapacityKind::Edge)};

  const auto runs = by_key(run_experiment(sc, kAllMethods, fixed_options()));
  for (Method m : kAllMethods) {
    CHECK(runs.at({0, 0, m})->outcome == Outcome::Success);
    CHECK(runs.at({0, 1, m})->outcome == Outcome::NoValidAllocation);
  }
}

TEST_CASE("every repetition starts from full quotas again") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 3), one_ms_app(1, 3)};
  sc.capacities = {cap_with(0, 4, 8, 8)};

  const auto runs = by_key(run_experiment(sc, kAllMethods, fixed_options(3)));
  for (int rep = 0; rep < 3; ++rep)
    for (Method m : kAllMethods) {
      CHECK(runs.at({rep, 0, m})->outcome == Outcome::Success);
      CHECK(runs.at({rep, 0, m})->cost == runs.at({0, 0, m})->cost);
      CHECK(runs.at({rep, 1, m})->outcome == Outcome::NoValidAllocation);
    }
}

TEST_CASE("repetition zero reproduces the generated scenario applications") {
  const Scenario sc = generate_scenario({3, 6, 99, 0.5});

  ExperimentOptions redraw;
  redraw.repetitions = 2;
  redraw.redraw_applications = true;
  redraw.zero_timing = true;
  const auto with_redraw = by_key(run_experiment(sc, {Method::FirstFit}, redraw));
  const auto fixed = by_key(run_experiment(sc, {Method::FirstFit},
                                           fixed_options(1)));

  for (const auto& [key, record] : fixed) {
    const RunRecord* redrawn = with_redraw.at(key);
    CHECK(record->outcome == redrawn->outcome);
    CHECK(record->cost == redrawn->cost);
  }
}

TEST_CASE("a run over budget halts its method for the whole experiment") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 1), one_ms_app(1, 1)};
  sc.capacities = {cap_with(0, 8, 8, 8)};

  ExperimentOptions options = fixed_options(2);
  options.time_budget_seconds = 0.0;
  const std::vector<RunRecord> records =
      run_experiment(sc, kAllMethods, options);
  REQUIRE(records.size() == 3);
  for (const RunRecord& r : records) {
    CHECK(r.repetition == 0);
    CHECK(r.application_id == 0);
    CHECK(r.outcome == Outcome::TimeBudgetExceeded);
    CHECK(r.elapsed_seconds.has_value());
    CHECK_FALSE(r.cost.has_value());
  }
}

TEST_CASE("record csv matches the golden rows byte for byte") {
  RunRecord success;
  success.repetition = 0;
  success.application_id = 3;
  success.method = Method::Centralised;
  success.elapsed_seconds = 0.25;
  success.outcome = Outcome::Success;
  success.cost = 0.5;
  success.qos = QosBreakdown{0.5, 1.5, 0.25, 0.75};

  RunRecord failure;
  failure.repetition = 1;
  failure.application_id = 2;
  failure.method = Method::Cbba;
  failure.outcome = Outcome::NoValidAllocation;
  failure.rounds = 4;
  failure.messages = 36;

  const std::vector<RunRecord> records{success, failure};
  CHECK(records_to_csv(records) ==
        "repetition,application_id,method,elapsed_seconds,outcome,cost,price,"
        "energy,bandwidth,latency,rounds,messages\n"
        "0,3,Centralised,0.25,Success,0.5,0.5,1.5,0.25,0.75,,\n"
        "1,2,CBBA,,NoValidAllocation,,,,,,4,36\n");
}

TEST_CASE("record csv round trips through a file") {
  Scenario sc;
  sc.seed = 5;
  sc.applications = {one_ms_app(0, 3), one_ms_app(1, 3)};
  sc.capacities = {cap_with(0, 4, 8, 8)};
  const std::vector<RunRecord> records =
      run_experiment(sc, kAllMethods, fixed_options(2));

  const auto file =
      std::filesystem::temp_directory_path() / "swarmalloc_records_rt.csv";
  write_records_csv(records, file);
  const std::vector<RunRecord> back = read_records_csv(file);
  std::filesystem::remove(file);

  REQUIRE(back.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    CAPTURE(i);
    CHECK(back[i].repetition == records[i].repetition);
    CHECK(back[i].application_id == records[i].application_id);
    CHECK(back[i].method == records[i].method);
    CHECK(back[i].elapsed_seconds == records[i].elapsed_seconds);
    CHECK(back[i].outcome == records[i].outcome);
    CHECK(back[i].cost == records[i].cost);
    CHECK(back[i].qos.has_value() == records[i].qos.has_value());
    if (back[i].qos)
      CHECK((*back[i].qos == *records[i].qos));
    CHECK(back[i].rounds == records[i].rounds);
    CHECK(back[i].messages == records[i].messages);
  }
}

TEST_CASE("reading rejects foreign headers and short rows") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto bad_header = dir / "swarmalloc_bad_header.csv";
  {
    std::ofstream out(bad_header);
    out << "nope\n";
  }
  CHECK_THROWS_AS(read_records_csv(bad_header), std::runtime_error);
  std::filesystem::remove(bad_header);

  const auto short_row = dir / "swarmalloc_short_row.csv";
  {
    std::ofstream out(short_row);
    out << "repetition,application_id,method,elapsed_seconds,outcome,cost,"
           "price,energy,bandwidth,latency,rounds,messages\n"
           "0,1,CBBA\n";
  }
  CHECK_THROWS_AS(read_records_csv(short_row), std::runtime_error);
  std::filesystem::remove(short_row);
}

TEST_CASE("identical experiments serialize identically with zeroed timing") {
  const Scenario sc = generate_scenario({2, 5, 616, 0.5});
  ExperimentOptions options;
  options.repetitions = 2;
  options.zero_timing = true;
  const std::string a = records_to_csv(run_experiment(sc, kAllMethods, options));
  const std::string b = records_to_csv(run_experiment(sc, kAllMethods, options));
  CHECK(a == b);
  CHECK(a.find("Centralised") != std::string::npos);
}

TEST_CASE("scale suite shapes honour the factor with a floor of one") {
  const std::vector<ScenarioSpec> full = scale_suite_specs(1.0, 40);
  REQUIRE(full.size() == 5);
  CHECK(full[0].n_applications == 10);
  CHECK(full[0].n_capacities == 50);
  CHECK(full[4].n_applications == 1000);
  CHECK(full[4].n_capacities == 3000);
  for (std::size_t i = 0; i < full.size(); ++i)
    CHECK(full[i].seed == 40 + i);

  const std::vector<ScenarioSpec> tenth = scale_suite_specs(0.1, 40);
  CHECK(tenth[0].n_applications == 1);
  CHECK(tenth[0].n_capacities == 5);
  CHECK(tenth[2].n_applications == 10);
  CHECK(tenth[2].n_capacities == 50);

  const std::vector<ScenarioSpec> floor = scale_suite_specs(0.001, 40);
  CHECK(floor[0].n_applications == 1);
  CHECK(floor[0].n_capacities == 1);

  CHECK_THROWS_AS(scale_suite_specs(0.0, 40), std::invalid_argument);
}

TEST_CASE("the scale suite runs each spec through the experiment") {
  std::vector<ScenarioSpec> specs = scale_suite_specs(0.02, 7, 1);
  specs.resize(2);
  ExperimentOptions options;
  options.zero_timing = true;
  const std::vector<ScaleScenarioResult> results =
      run_scale_suite(specs, {Method::FirstFit}, options);
  REQUIRE(results.size() == 2);
  for (std::size_t i = 0; i < results.size(); ++i) {
    CHECK(results[i].spec.n_applications == specs[i].n_applications);
    CHECK(results[i].records.size() ==
          static_cast<std::size_t>(specs[i].n_applications));
  }
}
