#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "railestate/snapshot.hpp"

namespace railestate {

struct LatencyStats {
  std::size_t samples = 0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
};

/// Nearest-rank percentiles over raw millisecond samples.
LatencyStats summarize_latencies(std::vector<double> ms);

struct WorkloadResult {
  std::string name;
  LatencyStats indexed;
  LatencyStats naive;
  double median_speedup = 0.0;  // naive p50 / indexed p50
};

struct BenchReport {
  std::size_t price_rows = 0;
  std::size_t boundaries = 0;
  std::vector<WorkloadResult> workloads;
  LatencyStats overall_indexed;  // all indexed queries pooled
};

struct BenchOptions {
  int queries_per_workload = 100;
  double radius_m = kDefaultNearbyRadiusM;
  std::uint64_t seed = 11;
};

/// Times the same randomized queries with and without indexes.
///
/// Workloads: city+year MAX, ZIP AVG, COUNT within a radius of a ZIP, and the
/// raw ZIP-centroid radius search. Every pair of results is compared, and a
/// mismatch throws Error(InvariantViolation).
BenchReport run_bench(const Dataset& data, const BenchOptions& options = {});

nlohmann::ordered_json to_json(const BenchReport& report);

}  // namespace railestate
