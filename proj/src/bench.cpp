#include "railestate/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>

#include "railestate/errors.hpp"
#include "railestate/ingest.hpp"
#include "railestate/query.hpp"

namespace railestate {

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
double time_ms(F&& f) {
  const auto t0 = Clock::now();
  f();
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

nlohmann::ordered_json stats_json(const LatencyStats& s) {
  return {{"samples", s.samples}, {"p50_ms", s.p50_ms}, {"p95_ms", s.p95_ms}, {"max_ms", s.max_ms}};
}

}  // namespace

LatencyStats summarize_latencies(std::vector<double> ms) {
  LatencyStats out;
  out.samples = ms.size();
  if (ms.empty()) return out;
  std::sort(ms.begin(), ms.end());
  out.p50_ms = nearest_rank(ms, 50);
  out.p95_ms = nearest_rank(ms, 95);
  out.max_ms = ms.back();
  return out;
}

BenchReport run_bench(const Dataset& data, const BenchOptions& options) {
  const Store& store = data.store;
  const Executor indexed(store, data.index, {true});
  const Executor naive(store, data.index, {false});

  std::mt19937_64 rng(options.seed);
  const auto cities = store.cities();
  const auto zips = store.zips();
  const auto range = store.price_month_range();
  if (cities.empty() || zips.empty() || !range) {
    throw Error(Errc::InsufficientData, "benchmark needs a store with prices");
  }
  const int y0 = year_of(range->first), y1 = year_of(range->second);
  auto pick = [&rng](const std::vector<std::string>& v) -> const std::string& {
    return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
  };
  auto year = [&] { return std::uniform_int_distribution<int>(y0, y1)(rng); };

  struct Workload {
    std::string name;
    std::function<QueryAst()> make;
  };
  const std::vector<Workload> sql_workloads{
      {"max_price_city_year",
       [&] {
         const int y = year();
         return QueryAst{Aggregate{AggregateFn::Max, "value"},
                         Table::LocationsPrices,
                         {AttrEquals{"city", pick(cities)},
                          DateBetween{"date", first_day(make_month(y, 1)), last_day(make_month(y, 12))}},
                         "highest_price"};
       }},
      {"avg_price_zip",
       [&] {
         return QueryAst{Aggregate{AggregateFn::Avg, "value"}, Table::LocationsPrices,
                         {AttrEquals{"zip", pick(zips)}}, std::nullopt};
       }},
      {"count_within_radius_of_zip",
       [&] {
         return QueryAst{Aggregate{AggregateFn::Count, "*"}, Table::LocationsPrices,
                         {WithinRadiusOfZip{pick(zips), options.radius_m}}, std::nullopt};
       }},
  };

  BenchReport report;
  report.price_rows = store.prices().size();
  report.boundaries = store.boundaries().size();
  std::vector<double> pooled;

  auto finish = [&](std::string name, std::vector<double> a, std::vector<double> b) {
    pooled.insert(pooled.end(), a.begin(), a.end());
    WorkloadResult w{std::move(name), summarize_latencies(std::move(a)), summarize_latencies(std::move(b)), 0.0};
    w.median_speedup = w.indexed.p50_ms > 0 ? w.naive.p50_ms / w.indexed.p50_ms : 0.0;
    report.workloads.push_back(std::move(w));
  };

  for (const auto& w : sql_workloads) {
    std::vector<double> a, b;
    for (int i = 0; i < options.queries_per_workload; ++i) {
      const QueryAst ast = w.make();
      ResultSet ra, rb;
      a.push_back(time_ms([&] { ra = indexed.execute(ast); }));
      b.push_back(time_ms([&] { rb = naive.execute(ast); }));
      if (!(ra == rb)) throw Error(Errc::InvariantViolation, "indexed and naive results differ: " + w.name);
    }
    finish(w.name, std::move(a), std::move(b));
  }

  {
    std::vector<double> a, b;
    for (int i = 0; i < options.queries_per_workload; ++i) {
      const GeoPoint c = data.index.boundary(pick(zips))->centroid;
      std::vector<ZipHit> ha, hb;
      a.push_back(time_ms([&] { ha = data.index.zips_within_radius(c, options.radius_m); }));
      b.push_back(time_ms([&] { hb = data.index.scan_zips_within_radius(c, options.radius_m); }));
      if (ha.size() != hb.size()) throw Error(Errc::InvariantViolation, "radius search mismatch");
    }
    finish("zip_centroid_radius", std::move(a), std::move(b));
  }

  report.overall_indexed = summarize_latencies(std::move(pooled));
  return report;
}

nlohmann::ordered_json to_json(const BenchReport& report) {
  nlohmann::ordered_json w = nlohmann::ordered_json::array();
  for (const auto& x : report.workloads) {
    w.push_back({{"name", x.name},
                 {"indexed", stats_json(x.indexed)},
                 {"naive", stats_json(x.naive)},
                 {"median_speedup", x.median_speedup}});
  }
  return {{"price_rows", report.price_rows},
          {"boundaries", report.boundaries},
          {"overall_indexed", stats_json(report.overall_indexed)},
          {"workloads", w}};
}

}  // namespace railestate
