#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swarmalloc/harness.hpp"
#include "swarmalloc/scenario.hpp"
#include "swarmalloc/stats.hpp"

namespace {

using swarmalloc::ExperimentOptions;
using swarmalloc::Method;

std::vector<Method> parse_methods(const std::string& text) {
  std::vector<Method> methods;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ','))
    methods.push_back(swarmalloc::method_from_string(token));
  if (methods.empty()) throw CLI::ValidationError("--methods", "no methods given");
  return methods;
}

void apply_config(const std::string& file, ExperimentOptions& options) {
  std::ifstream in(file);
  if (!in) throw CLI::ValidationError("--config", "cannot read " + file);
  const nlohmann::json j = nlohmann::json::parse(in);
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (w.contains("price")) options.weights.price = w.at("price").get<double>();
    if (w.contains("energy")) options.weights.energy = w.at("energy").get<double>();
    if (w.contains("bandwidth"))
      options.weights.bandwidth = w.at("bandwidth").get<double>();
    if (w.contains("latency"))
      options.weights.latency = w.at("latency").get<double>();
  }
  if (j.contains("norm_bounds")) {
    const auto& nb = j.at("norm_bounds");
    const auto read = [&nb](const char* name, swarmalloc::Bound& bound) {
      if (!nb.contains(name)) return;
      if (nb.at(name).contains("min")) bound.min = nb.at(name).at("min").get<double>();
      if (nb.at(name).contains("max")) bound.max = nb.at(name).at("max").get<double>();
    };
    read("price", options.bounds.price);
    read("energy", options.bounds.energy);
    read("bandwidth", options.bounds.bandwidth);
    read("latency", options.bounds.latency);
  }
  options.weights.validate();
  options.bounds.validate();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource selection for microservice applications across "
               "cloud-edge capacities"};
  app.require_subcommand(1);

  // generate
  auto* generate = app.add_subcommand("generate", "Generate a random scenario");
  int gen_apps = 10;
  int gen_caps = 15;
  std::uint64_t gen_seed = 1;
  double gen_cloud_fraction = 0.5;
  std::string gen_out = "scenario.json";
  generate->add_option("--apps", gen_apps, "Number of applications")
      ->check(CLI::PositiveNumber);
  generate->add_option("--caps", gen_caps, "Number of capacities")
      ->check(CLI::PositiveNumber);
  generate->add_option("--seed", gen_seed, "Generator seed");
  generate->add_option("--cloud-fraction", gen_cloud_fraction,
                       "Fraction of capacities that are cloud")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("-o,--out", gen_out, "Output scenario file")->required();

  // run
  auto* run = app.add_subcommand("run", "Run an experiment on a scenario");
  std::string run_scenario;
  std::string run_methods = "centralised,first-fit,cbba";
  std::string run_out = "records.csv";
  std::string run_config;
  std::string run_trace;
  std::string run_timing = "wall";
  ExperimentOptions run_options;
  bool run_repeat_capacities = false;
  bool run_fixed_apps = false;
  run->add_option("--scenario", run_scenario, "Scenario JSON file")->required();
  run->add_option("--methods", run_methods,
                  "Comma separated: centralised,first-fit,cbba");
  run->add_option("--repetitions", run_options.repetitions,
                  "Repetitions per scenario")
      ->check(CLI::PositiveNumber);
  run->add_option("--out", run_out, "Records CSV output")->required();
  run->add_option("--config", run_config,
                  "JSON file overriding weights and normalization bounds");
  run->add_option("--max-rounds", run_options.max_rounds,
                  "Consensus round cap (0 = tasks * agents)");
  run->add_option("--budget", run_options.candidate_budget,
                  "Exhaustive enumeration budget");
  run->add_option("--time-budget", run_options.time_budget_seconds,
                  "Per-application time budget in seconds");
  run->add_flag("--repeat-capacities", run_repeat_capacities,
                "Redraw capacities every repetition");
  run->add_flag("--fixed-apps", run_fixed_apps,
                "Reuse the scenario applications every repetition");
  run->add_option("--timing-mode", run_timing,
                  "wall (default) or zero for reproducible output")
      ->check(CLI::IsMember({"wall", "zero"}));
  run->add_option("--message-trace", run_trace,
                  "Append consensus messages to this JSONL file");

  // scale
  auto* scale = app.add_subcommand("scale", "Run the five large-scale shapes");
  double scale_factor = 1.0;
  std::uint64_t scale_seed = 1;
  std::string scale_methods = "first-fit,cbba";
  std::string scale_out_dir = "scale";
  std::string scale_config;
  ExperimentOptions scale_options;
  scale->add_option("--factor", scale_factor, "Scale factor on both counts")
      ->check(CLI::PositiveNumber);
  scale->add_option("--seed", scale_seed, "Base seed");
  scale->add_option("--methods", scale_methods,
                    "Comma separated: centralised,first-fit,cbba");
  scale->add_option("--repetitions", scale_options.repetitions,
                    "Repetitions per scenario")
      ->check(CLI::PositiveNumber);
  scale->add_option("--time-budget", scale_options.time_budget_seconds,
                    "Per-application time budget in seconds");
  scale->add_option("--budget", scale_options.candidate_budget,
                    "Exhaustive enumeration budget");
  scale->add_option("--config", scale_config,
                    "JSON file overriding weights and normalization bounds");
  std::string scale_timing = "wall";
  scale->add_option("--timing-mode", scale_timing,
                    "wall (default) or zero for reproducible output")
      ->check(CLI::IsMember({"wall", "zero"}));
  scale->add_option("--out-dir", scale_out_dir, "Directory for records CSVs")
      ->required();

  // report
  auto* report = app.add_subcommand("report", "Build report tables from records");
  std::string report_records;
  std::string report_out = "report";
  report->add_option("--records", report_records, "Records CSV file")
      ->required();
  report->add_option("--out", report_out, "Report output directory")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*generate) {
      swarmalloc::ScenarioSpec spec;
      spec.n_applications = gen_apps;
      spec.n_capacities = gen_caps;
      spec.seed = gen_seed;
      spec.cloud_fraction = gen_cloud_fraction;
      swarmalloc::save_scenario(swarmalloc::generate_scenario(spec), gen_out);
      std::cout << "wrote " << gen_out << "\n";
    } else if (*run) {
      if (!run_config.empty()) apply_config(run_config, run_options);
      run_options.redraw_capacities = run_repeat_capacities;
      run_options.redraw_applications = !run_fixed_apps;
      run_options.zero_timing = run_timing == "zero";
      std::ofstream trace;
      if (!run_trace.empty()) {
        trace.open(run_trace, std::ios::binary);
        if (!trace) throw std::runtime_error("cannot write " + run_trace);
        run_options.message_trace = &trace;
      }
      const swarmalloc::Scenario scenario =
          swarmalloc::load_scenario(run_scenario);
      const std::vector<swarmalloc::RunRecord> records =
          swarmalloc::run_experiment(scenario, parse_methods(run_methods),
                                     run_options);
      swarmalloc::write_records_csv(records, run_out);
      std::cout << "wrote " << run_out << " (" << records.size()
                << " records)\n";
    } else if (*scale) {
      if (!scale_config.empty()) apply_config(scale_config, scale_options);
      scale_options.zero_timing = scale_timing == "zero";
      const auto specs = swarmalloc::scale_suite_specs(
          scale_factor, scale_seed, scale_options.repetitions);
      const auto results = swarmalloc::run_scale_suite(
          specs, parse_methods(scale_methods), scale_options);
      std::filesystem::create_directories(scale_out_dir);
      for (const auto& result : results) {
        const std::string name = "records_" +
                                 std::to_string(result.spec.n_applications) +
                                 "x" +
                                 std::to_string(result.spec.n_capacities) +
                                 ".csv";
        swarmalloc::write_records_csv(result.records,
                                      std::filesystem::path(scale_out_dir) /
                                          name);
        std::cout << "wrote " << scale_out_dir << "/" << name << " ("
                  << result.records.size() << " records)\n";
      }
    } else if (*report) {
      const std::vector<swarmalloc::RunRecord> records =
          swarmalloc::read_records_csv(report_records);
      swarmalloc::write_report(records, report_out);
      std::cout << "wrote report to " << report_out << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
