#include "swarmalloc/scenario.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace swarmalloc {

namespace {

using Json = nlohmann::ordered_json;

int draw_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

double draw_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

Location draw_ms_location(Rng& rng) {
  const double u = draw_real(rng, 0.0, 1.0);
  if (u < 0.2) return Location::EU;
  if (u < 0.4) return Location::US;
  if (u < 0.6) return Location::Asia;
  return Location::Worldwide;
}

Json to_json(const Microservice& ms) {
  return Json{{"id", ms.id},
              {"cpu", ms.cpu},
              {"ram", ms.ram},
              {"storage", ms.storage},
              {"location", to_string(ms.location)},
              {"running_time", ms.running_time}};
}

Json to_json(const Capacity& cap) {
  Json j{{"id", cap.id},
         {"kind", to_string(cap.kind)},
         {"cpu_quota", cap.cpu_quota},
         {"ram_quota", cap.ram_quota},
         {"storage_quota", cap.storage_quota},
         {"location", to_string(cap.location)},
         {"qos",
          Json{{"price", cap.qos.price},
               {"energy", cap.qos.energy},
               {"bandwidth", cap.qos.bandwidth},
               {"latency", cap.qos.latency}}},
         {"discount", cap.discount},
         {"remaining",
          Json{{"cpu", cap.remaining.cpu},
               {"ram", cap.remaining.ram},
               {"storage", cap.remaining.storage}}}};
  j["occupied_by"] = cap.occupied_by.has_value() ? Json(*cap.occupied_by) : Json(nullptr);
  return j;
}

Microservice microservice_from_json(const Json& j) {
  Microservice ms;
  ms.id = j.at("id").get<int>();
  ms.cpu = j.at("cpu").get<int>();
  ms.ram = j.at("ram").get<int>();
  ms.storage = j.at("storage").get<int>();
  ms.location = location_from_string(j.at("location").get<std::string>());
  ms.running_time = j.at("running_time").get<int>();
  return ms;
}

Capacity capacity_from_json(const Json& j) {
  Capacity cap;
  cap.id = j.at("id").get<int>();
  cap.kind = capacity_kind_from_string(j.at("kind").get<std::string>());
  cap.cpu_quota = j.at("cpu_quota").get<int>();
  cap.ram_quota = j.at("ram_quota").get<int>();
  cap.storage_quota = j.at("storage_quota").get<int>();
  cap.location = location_from_string(j.at("location").get<std::string>());
  const Json& q = j.at("qos");
  cap.qos.price = q.at("price").get<double>();
  cap.qos.energy = q.at("energy").get<double>();
  cap.qos.bandwidth = q.at("bandwidth").get<double>();
  cap.qos.latency = q.at("latency").get<double>();
  cap.discount = j.at("discount").get<double>();
  const Json& r = j.at("remaining");
  cap.remaining.cpu = r.at("cpu").get<int>();
  cap.remaining.ram = r.at("ram").get<int>();
  cap.remaining.storage = r.at("storage").get<int>();
  if (j.contains("occupied_by") && !j.at("occupied_by").is_null())
    cap.occupied_by = j.at("occupied_by").get<int>();
  return cap;
}

}  // namespace

Application generate_application(Rng& rng, int id) {
  Application app;
  app.id = id;
  const int count = draw_int(rng, 1, 5);
  for (int i = 0; i < count; ++i) {
    Microservice ms;
    ms.id = i;
    ms.cpu = draw_int(rng, 1, 6);
    ms.ram = draw_int(rng, 1, 6);
    ms.storage = draw_int(rng, 1, 10);
    ms.location = draw_ms_location(rng);
    ms.running_time = draw_int(rng, 1, 30);
    app.microservices.push_back(ms);
  }
  return app;
}

Capacity generate_capacity(Rng& rng, CapacityKind kind, int id) {
  const bool cloud = kind == CapacityKind::Cloud;
  Capacity cap;
  cap.id = id;
  cap.kind = kind;
  cap.cpu_quota = 1 << draw_int(rng, cloud ? 4 : 1, cloud ? 10 : 5);
  cap.ram_quota = 1 << draw_int(rng, cloud ? 4 : 1, cloud ? 10 : 5);
  cap.storage_quota = 1 << draw_int(rng, 2, cloud ? 13 : 10);
  cap.location = static_cast<Location>(draw_int(rng, 0, 2));
  switch (cap.location) {
    case Location::US: cap.qos.price = draw_real(rng, 0.15, 1.0); break;
    case Location::EU: cap.qos.price = draw_real(rng, 0.1, 0.8); break;
    default: cap.qos.price = draw_real(rng, 0.05, 0.7); break;
  }
  cap.qos.energy = draw_real(rng, 1.0, 10.0);
  cap.qos.bandwidth = draw_real(rng, 100.0, 1000.0);
  cap.qos.latency = draw_real(rng, 50.0, 200.0);
  cap.discount = draw_real(rng, 0.0, 1.0);
  cap.remaining = {cap.cpu_quota, cap.ram_quota, cap.storage_quota};
  return cap;
}

Scenario generate_scenario(const ScenarioSpec& spec) {
  if (spec.n_applications < 0 || spec.n_capacities < 0)
    throw std::invalid_argument("scenario sizes must be non-negative");
  if (spec.cloud_fraction < 0.0 || spec.cloud_fraction > 1.0)
    throw std::invalid_argument("cloud_fraction must lie in [0, 1]");
  Rng rng(spec.seed);
  Scenario scenario;
  scenario.seed = spec.seed;
  for (int i = 0; i < spec.n_applications; ++i)
    scenario.applications.push_back(generate_application(rng, i));
  const int n_cloud = static_cast<int>(
      std::llround(spec.cloud_fraction * spec.n_capacities));
  for (int i = 0; i < spec.n_capacities; ++i) {
    const CapacityKind kind =
        i < n_cloud ? CapacityKind::Cloud : CapacityKind::Edge;
    scenario.capacities.push_back(generate_capacity(rng, kind, i));
  }
  return scenario;
}

std::string scenario_to_json(const Scenario& scenario) {
  Json j;
  j["applications"] = Json::array();
  for (const Application& app : scenario.applications) {
    Json a{{"id", app.id}, {"microservices", Json::array()}};
    for (const Microservice& ms : app.microservices)
      a["microservices"].push_back(to_json(ms));
    j["applications"].push_back(std::move(a));
  }
  j["capacities"] = Json::array();
  for (const Capacity& cap : scenario.capacities)
    j["capacities"].push_back(to_json(cap));
  j["seed"] = scenario.seed;
  j["spec_version"] = 1;
  return j.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
  const Json j = Json::parse(text);
  if (!j.contains("spec_version") || j.at("spec_version").get<int>() != 1)
    throw std::invalid_argument("unsupported scenario spec_version");
  Scenario scenario;
  scenario.seed = j.at("seed").get<std::uint64_t>();
  for (const Json& a : j.at("applications")) {
    Application app;
    app.id = a.at("id").get<int>();
    for (const Json& m : a.at("microservices"))
      app.microservices.push_back(microservice_from_json(m));
    validate(app);
    scenario.applications.push_back(std::move(app));
  }
  for (const Json& c : j.at("capacities")) {
    Capacity cap = capacity_from_json(c);
    validate(cap);
    scenario.capacities.push_back(cap);
  }
  return scenario;
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << scenario_to_json(scenario);
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return scenario_from_json(text);
}

}  // namespace swarmalloc
