#pragma once

#include <cstddef>
#include <filesystem>
#include <span>

#include "swarmalloc/harness.hpp"

namespace swarmalloc {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  bool significant = false;  // at the 0.05 level
};

// Two-sample Kolmogorov-Smirnov test: the statistic is the largest gap
// between the two empirical distribution functions; the p-value comes from
// the asymptotic Kolmogorov distribution at sqrt(n1*n2/(n1+n2)) * D.
// Throws std::invalid_argument when a sample is empty.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

// Survival function of the Kolmogorov distribution, clamped to [0, 1].
double kolmogorov_q(double z);

// Writes time_by_app.csv, failures.csv, cost_dist.csv, cost_delta.csv,
// qos_dist.csv, ks_tests.csv and summary.txt into out_dir. Identical record
// streams produce byte-identical files.
void write_report(std::span<const RunRecord> records,
                  const std::filesystem::path& out_dir);

}  // namespace swarmalloc
