// railestate: ingest, query, ask, serve and bench from the command line.

#include <cstdio>
#include <iostream>
#include <memory>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "railestate/bench.hpp"
#include "railestate/errors.hpp"
#include "railestate/nl2sql.hpp"
#include "railestate/query.hpp"
#include "railestate/service.hpp"
#include "railestate/snapshot.hpp"
#include "railestate/synthetic.hpp"

namespace re = railestate;

namespace {

std::string cell(const re::Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "NULL";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return x;
        } else if constexpr (std::is_same_v<T, double>) {
          return fmt::format("{}", x);
        } else {
          return re::format_date(x);
        }
      },
      v);
}

void print_table(const re::ResultSet& rs) {
  std::string line;
  for (std::size_t i = 0; i < rs.columns.size(); ++i) line += (i ? "\t" : "") + rs.columns[i];
  std::cout << line << '\n';
  for (const auto& row : rs.rows) {
    line.clear();
    for (std::size_t i = 0; i < row.size(); ++i) line += (i ? "\t" : "") + cell(row[i]);
    std::cout << line << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transit-aware housing analytics"};
  app.require_subcommand(1);

  // ingest
  std::string src_dir, out_dir, zip_property{re::kDefaultZipProperty};
  auto* ingest = app.add_subcommand("ingest", "Clean raw sources and write a snapshot");
  ingest->add_option("source", src_dir, "Directory with prices.csv, stops.txt, routes.txt, "
                                        "stop_sequences.txt, boundaries.geojson")
      ->required()->check(CLI::ExistingDirectory);
  ingest->add_option("--out,-o", out_dir, "Snapshot directory")->required();
  ingest->add_option("--zip-property", zip_property, "GeoJSON property holding the ZIP");

  // query
  std::string data_dir, sql;
  bool no_index = false, as_json = false;
  auto* query = app.add_subcommand("query", "Run one sanitized SELECT against a snapshot");
  query->add_option("--data,-d", data_dir, "Snapshot directory")
      ->envname("RAILESTATE_DATA")->required()->check(CLI::ExistingDirectory);
  query->add_option("sql", sql, "SELECT statement")->required();
  query->add_flag("--no-index", no_index, "Force full scans");
  query->add_flag("--json", as_json, "Print JSON instead of a table");

  // ask
  std::string question;
  auto* ask = app.add_subcommand("ask", "Answer a natural-language question");
  ask->add_option("--data,-d", data_dir, "Snapshot directory")
      ->envname("RAILESTATE_DATA")->required()->check(CLI::ExistingDirectory);
  ask->add_option("question", question)->required();
  bool show_sql = false;
  ask->add_flag("--sql", show_sql, "Also print the generated SQL");

  // serve
  re::ApiConfig api_cfg;
  std::string thresholds;
  auto* serve = app.add_subcommand("serve", "Serve the HTTP API");
  serve->add_option("--data,-d", data_dir, "Snapshot directory")
      ->envname("RAILESTATE_DATA")->required()->check(CLI::ExistingDirectory);
  serve->add_option("--host", api_cfg.host)->envname("RAILESTATE_HOST");
  serve->add_option("--port", api_cfg.port)->envname("RAILESTATE_PORT");
  serve->add_option("--thresholds", thresholds, "Band cut points, e.g. 400000,500000,600000")
      ->envname("RAILESTATE_THRESHOLDS");
  serve->add_option("--radius", api_cfg.nearby_radius_m, "Nearby-station radius in meters")
      ->envname("RAILESTATE_RADIUS_M");
  serve->add_option("--cors-origin", api_cfg.cors_origin)->envname("RAILESTATE_CORS_ORIGIN");

  // bench
  re::SyntheticSpec spec;
  re::BenchOptions bench_opts;
  std::string bench_data;
  auto* bench = app.add_subcommand("bench", "Compare indexed and naive query latency");
  bench->add_option("--data,-d", bench_data, "Snapshot directory (default: synthetic data)")
      ->check(CLI::ExistingDirectory);
  bench->add_option("--queries", bench_opts.queries_per_workload);
  bench->add_option("--radius", bench_opts.radius_m);
  bench->add_option("--zips", spec.priced_zips, "Synthetic priced ZIPs");
  bench->add_option("--months", spec.months, "Synthetic months per ZIP");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      re::IngestOptions opts;
      opts.zip_property = zip_property;
      auto result = re::run_ingest(re::read_sources(src_dir), opts);
      re::write_snapshot(out_dir, result.store, result.report);
      fmt::print("rows_in={} rows_out={} dropped_null={} capped_low={} capped_high={}\n",
                 result.report.rows_in, result.report.rows_out, result.report.rows_dropped_null,
                 result.report.values_capped_low, result.report.values_capped_high);
      fmt::print("stations={} lines={} boundaries={} predictions={} forecast_skipped={}\n",
                 result.store.stations().size(), result.store.lines().size(),
                 result.store.boundaries().size(), result.store.predictions().size(),
                 result.forecast_skips.size());
      return 0;
    }
    if (*query) {
      const re::Dataset data(re::read_snapshot(data_dir));
      const std::string cleaned = re::clean_sql(sql);
      const auto rs = re::Executor(data.store, data.index, {!no_index}).execute(re::parse_sql(cleaned));
      if (as_json) {
        std::cout << re::to_json(rs).dump(2) << '\n';
      } else {
        print_table(rs);
      }
      return 0;
    }
    if (*ask) {
      const re::Dataset data(re::read_snapshot(data_dir));
      const re::Assistant assistant(data.store, data.index);
      const re::Answer a = assistant.ask(question);
      if (show_sql && !a.sql.empty()) std::cout << a.sql << '\n';
      std::cout << a.text << '\n';
      return a.status == re::AnswerStatus::Ok || a.status == re::AnswerStatus::NoData ? 0 : 3;
    }
    if (*serve) {
      if (!thresholds.empty()) {
        auto t = re::parse_thresholds(thresholds);
        if (!t) throw re::Error(re::Errc::InvalidQuery, "bad --thresholds: " + thresholds);
        api_cfg.thresholds = *t;
      }
      if (!api_cfg.valid()) throw re::Error(re::Errc::InvalidQuery, "invalid server configuration");
      api_cfg.data_dir = data_dir;
      re::Api api(api_cfg);
      // Listen immediately; requests get 503 until the snapshot is loaded.
      std::thread loader([&api, data_dir] {
        try {
          api.load(std::make_shared<const re::Dataset>(re::read_snapshot(data_dir)));
          fmt::print(stderr, "loaded {}\n", data_dir);
        } catch (const std::exception& e) {
          fmt::print(stderr, "error: {}\n", e.what());
          std::_Exit(1);
        }
      });
      loader.detach();
      fmt::print(stderr, "listening on {}:{}\n", api_cfg.host, api_cfg.port);
      re::run_server(api, api_cfg.host, api_cfg.port);
      return 0;
    }
    if (*bench) {
      const re::Dataset data(bench_data.empty() ? re::bulk_load(re::make_synthetic_tables(spec))
                                                : re::read_snapshot(bench_data));
      std::cout << re::to_json(re::run_bench(data, bench_opts)).dump(2) << '\n';
      return 0;
    }
  } catch (const re::UnsafeSqlError& e) {
    fmt::print(stderr, "rejected: {}\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
