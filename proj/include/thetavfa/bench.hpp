#pragma once

#include <functional>
#include <string>
#include <vector>

#include "thetavfa/config.hpp"
#include "thetavfa/pipeline.hpp"

namespace thetavfa {

struct BenchSpec {
  std::vector<std::string> families;
  std::vector<int> sizes;
  int count = 20;
};

/// Table row for one (family, n, method).
struct BenchRow {
  std::string family;
  int n = 0;
  int count = 0;
  std::string method;
  int verified = 0;
  int optimal = 0;
  double mean_sdp_seconds = 0.0;
  double mean_rounding_seconds = 0.0;
  long max_vfa_calls = 0;
  /// max over the cell of vfa_calls / n^3.
  double max_call_constant = 0.0;

  /// Percentage of verified instances solved optimally; negative when no
  /// instance could be verified.
  double optimal_percent() const { return verified > 0 ? 100.0 * optimal / verified : -1.0; }
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<ExperimentRecord> records;
};

/// Instance k of a cell is "family:n=N,seed=(config.seed + k)". Records are
/// ordered by (family, size, k) whatever the thread count.
BenchResult run_bench(const BenchSpec& spec, const RunConfig& config,
                      const std::function<void(const ExperimentRecord&)>& progress = nullptr);

/// CSV with a leading "# schema: thetavfa.bench/1" line.
std::string bench_csv(const BenchResult& result);
/// One record per line.
std::string bench_jsonl(const BenchResult& result);

}  // namespace thetavfa
