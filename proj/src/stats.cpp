#include "swarmalloc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "swarmalloc/text.hpp"

namespace swarmalloc {

namespace {

constexpr double kSignificance = 0.05;

const Method kMethodOrder[] = {Method::Centralised, Method::FirstFit,
                               Method::Cbba};

std::ofstream open_file(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  return out;
}

double mean_of(const std::vector<double>& values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct MetricColumn {
  const char* name;
  double (*get)(const RunRecord&);
};

const MetricColumn kMetrics[] = {
    {"cost", [](const RunRecord& r) { return *r.cost; }},
    {"price", [](const RunRecord& r) { return r.qos->price; }},
    {"energy", [](const RunRecord& r) { return r.qos->energy; }},
    {"bandwidth", [](const RunRecord& r) { return r.qos->bandwidth; }},
    {"latency", [](const RunRecord& r) { return r.qos->latency; }},
};

std::vector<double> metric_samples(std::span<const RunRecord> records,
                                   Method method, const MetricColumn& metric) {
  std::vector<double> samples;
  for (const RunRecord& r : records)
    if (r.method == method && r.outcome == Outcome::Success)
      samples.push_back(metric.get(r));
  return samples;
}

}  // namespace

double kolmogorov_q(double z) {
  if (z <= 0.0) return 1.0;
  constexpr double pi = std::numbers::pi;
  if (z < 1.18) {
    // Dual series; the direct one converges too slowly here.
    const double t = std::exp(-pi * pi / (8.0 * z * z));
    const double cdf = std::sqrt(2.0 * pi) / z *
                       (t + std::pow(t, 9.0) + std::pow(t, 25.0) +
                        std::pow(t, 49.0));
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  const double t = std::exp(-2.0 * z * z);
  const double q =
      2.0 * (t - std::pow(t, 4.0) + std::pow(t, 9.0) - std::pow(t, 16.0));
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("KS test needs non-empty samples");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());

  const double n1 = static_cast<double>(sa.size());
  const double n2 = static_cast<double>(sb.size());
  double d = 0.0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / n1 -
                             static_cast<double>(j) / n2));
  }

  KsResult result;
  result.statistic = d;
  result.n1 = sa.size();
  result.n2 = sb.size();
  const double effective_n = n1 * n2 / (n1 + n2);
  result.p_value = kolmogorov_q(std::sqrt(effective_n) * d);
  result.significant = result.p_value < kSignificance;
  return result;
}

void write_report(std::span<const RunRecord> records,
                  const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);

  std::vector<Method> methods_present;
  for (Method method : kMethodOrder)
    if (std::any_of(records.begin(), records.end(),
                    [method](const RunRecord& r) { return r.method == method; }))
      methods_present.push_back(method);

  {
    std::ofstream out = open_file(out_dir / "time_by_app.csv");
    out << "repetition,application_id,method,elapsed_seconds\n";
    for (const RunRecord& r : records)
      if (r.elapsed_seconds)
        out << r.repetition << ',' << r.application_id << ','
            << to_string(r.method) << ',' << format_double(*r.elapsed_seconds)
            << '\n';
  }

  {
    std::ofstream out = open_file(out_dir / "failures.csv");
    out << "method,outcome,count\n";
    for (Method method : methods_present) {
      std::map<Outcome, int> counts;
      for (const RunRecord& r : records)
        if (r.method == method && r.outcome != Outcome::Success)
          ++counts[r.outcome];
      for (const auto& [outcome, count] : counts)
        out << to_string(method) << ',' << to_string(outcome) << ',' << count
            << '\n';
    }
  }

  {
    std::ofstream out = open_file(out_dir / "cost_dist.csv");
    out << "repetition,application_id,method,cost\n";
    for (const RunRecord& r : records)
      if (r.outcome == Outcome::Success)
        out << r.repetition << ',' << r.application_id << ','
            << to_string(r.method) << ',' << format_double(*r.cost) << '\n';
  }

  {
    std::ofstream out = open_file(out_dir / "cost_delta.csv");
    out << "repetition,application_id,method,cost_ref,cost,delta,failed\n";
    std::map<std::pair<int, int>, const RunRecord*> reference;
    for (const RunRecord& r : records)
      if (r.method == Method::Centralised)
        reference[{r.repetition, r.application_id}] = &r;
    for (const RunRecord& r : records) {
      if (r.method == Method::Centralised) continue;
      const auto it = reference.find({r.repetition, r.application_id});
      const RunRecord* ref = it == reference.end() ? nullptr : it->second;
      const bool ref_cost = ref != nullptr && ref->cost.has_value();
      out << r.repetition << ',' << r.application_id << ','
          << to_string(r.method) << ',';
      if (ref_cost) out << format_double(*ref->cost);
      out << ',';
      if (r.cost) out << format_double(*r.cost);
      out << ',';
      if (ref_cost && r.cost) out << format_double(*r.cost - *ref->cost);
      out << ',' << (ref_cost && r.cost ? "false" : "true") << '\n';
    }
  }

  {
    std::ofstream out = open_file(out_dir / "qos_dist.csv");
    out << "repetition,application_id,method,price,energy,bandwidth,latency\n";
    for (const RunRecord& r : records)
      if (r.outcome == Outcome::Success)
        out << r.repetition << ',' << r.application_id << ','
            << to_string(r.method) << ',' << format_double(r.qos->price) << ','
            << format_double(r.qos->energy) << ','
            << format_double(r.qos->bandwidth) << ','
            << format_double(r.qos->latency) << '\n';
  }

  std::vector<std::string> ks_notes;
  {
    std::ofstream out = open_file(out_dir / "ks_tests.csv");
    out << "pair,metric,n1,n2,d,p_value,significant\n";
    const Method rivals[] = {Method::Cbba, Method::FirstFit};
    for (Method rival : rivals) {
      const std::string pair =
          to_string(Method::Centralised) + "-vs-" + to_string(rival);
      for (const MetricColumn& metric : kMetrics) {
        const std::vector<double> sa =
            metric_samples(records, Method::Centralised, metric);
        const std::vector<double> sb = metric_samples(records, rival, metric);
        if (sa.empty() || sb.empty()) {
          ks_notes.push_back("KS " + pair + " on " + metric.name +
                             " skipped: needs successful records for both "
                             "methods");
          continue;
        }
        const KsResult ks = ks_two_sample(sa, sb);
        out << pair << ',' << metric.name << ',' << ks.n1 << ',' << ks.n2
            << ',' << format_double(ks.statistic) << ','
            << format_double(ks.p_value) << ','
            << (ks.significant ? "true" : "false") << '\n';
      }
    }
  }

  {
    std::ofstream out = open_file(out_dir / "summary.txt");
    out << "records: " << records.size() << '\n';
    for (Method method : methods_present) {
      int total = 0;
      std::map<Outcome, int> by_outcome;
      std::vector<double> costs;
      for (const RunRecord& r : records) {
        if (r.method != method) continue;
        ++total;
        ++by_outcome[r.outcome];
        if (r.cost) costs.push_back(*r.cost);
      }
      out << '\n' << to_string(method) << ": " << total << " records\n";
      for (const auto& [outcome, count] : by_outcome)
        out << "  " << to_string(outcome) << ": " << count << '\n';
      if (!costs.empty())
        out << "  cost mean: " << format_double(mean_of(costs))
            << "  median: " << format_double(median_of(costs)) << '\n';
    }
    if (!ks_notes.empty()) {
      out << '\n';
      for (const std::string& note : ks_notes) out << note << '\n';
    }
  }
}

}  // namespace swarmalloc
