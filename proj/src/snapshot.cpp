#include "railestate/snapshot.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "railestate/csv.hpp"
#include "railestate/errors.hpp"

namespace railestate {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double to_num(const std::string& s, std::string_view file) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(Errc::UnparsableNumber, std::string(file) + ": '" + s + "'");
  }
  return v;
}

std::vector<csv::Row> table_rows(const fs::path& dir, std::string_view file,
                                 std::initializer_list<std::string_view> header) {
  auto rows = csv::parse(read_file(dir / file));
  if (rows.empty()) throw Error(Errc::MalformedHeader, std::string(file) + " is empty");
  if (rows.front() != csv::Row(header.begin(), header.end())) {
    throw Error(Errc::MalformedHeader, std::string(file) + " has an unexpected header");
  }
  for (std::size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != header.size()) {
      throw Error(Errc::MalformedHeader, std::string(file) + " row " + std::to_string(r));
    }
  }
  rows.erase(rows.begin());
  return rows;
}

Month month_cell(const std::string& s, std::string_view file) {
  auto m = parse_month(s);
  if (!m) throw Error(Errc::UnparsableDate, std::string(file) + ": '" + s + "'");
  return *m;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << content;
}

IngestResult run_ingest(const IngestSources& sources, const IngestOptions& options) {
  IngestResult result;
  auto cleaned = clean_records(parse_price_csv(sources.prices_csv));
  result.report = std::move(cleaned.report);

  auto transit = parse_stations(sources.stops_csv, sources.routes_csv, sources.sequences_csv);
  Tables tables;
  tables.stations = std::move(transit.stations);
  tables.lines = std::move(transit.lines);
  tables.station_paths = std::move(transit.paths);
  tables.boundaries = parse_boundaries(sources.boundaries_geojson, options.zip_property);
  tables.prices = std::move(cleaned.records);

  const DeltaOverrides overrides =
      sources.deltas_csv ? parse_delta_overrides(*sources.deltas_csv) : DeltaOverrides{};
  Store staged = bulk_load(tables, options.load);
  PredictionRun run = compute_predictions(staged, overrides);
  result.forecast_skips = std::move(run.skipped);
  tables.predictions = std::move(run.rows);
  result.store = bulk_load(std::move(tables), options.load);
  return result;
}

IngestSources read_sources(const fs::path& dir) {
  IngestSources s;
  s.prices_csv = read_file(dir / source_files::kPrices);
  s.stops_csv = read_file(dir / source_files::kStops);
  s.routes_csv = read_file(dir / source_files::kRoutes);
  s.sequences_csv = read_file(dir / source_files::kSequences);
  s.boundaries_geojson = read_file(dir / source_files::kBoundaries);
  if (fs::exists(dir / source_files::kDeltas)) s.deltas_csv = read_file(dir / source_files::kDeltas);
  return s;
}

void write_snapshot(const fs::path& dir, const Store& store, const CleaningReport& report) {
  fs::create_directories(dir);
  auto write_table = [&](std::string_view file, const csv::Row& header, auto&& rows) {
    std::string out = csv::join(header) + "\n";
    for (const auto& r : rows) out += csv::join(r) + "\n";
    write_file(dir / file, out);
  };

  std::vector<csv::Row> rows;
  for (const auto& s : store.stations()) {
    rows.push_back({s.station_id, s.name, num(s.location.lat), num(s.location.lon)});
  }
  write_table(snapshot_files::kStations, {"station_id", "name", "lat", "lon"}, rows);

  rows.clear();
  for (const auto& l : store.lines()) rows.push_back({l.line_id, l.name, l.color_tag});
  write_table(snapshot_files::kLines, {"line_id", "name", "color_tag"}, rows);

  rows.clear();
  for (const auto& p : store.station_paths()) {
    rows.push_back({p.line_id, p.station_id, std::to_string(p.sequence)});
  }
  write_table(snapshot_files::kStationPath, {"line_id", "station_id", "sequence"}, rows);

  rows.clear();
  for (const auto& r : store.prices()) {
    rows.push_back({r.zip, r.city, r.state, format_date(first_day(r.month)), num(r.value)});
  }
  write_table(snapshot_files::kPrices, {"zip", "city", "state", "date", "value"}, rows);

  rows.clear();
  for (const auto& p : store.predictions()) {
    rows.push_back({p.zip, format_date(first_day(p.base_month)), std::to_string(p.horizon_months),
                    num(p.predicted_value)});
  }
  write_table(snapshot_files::kPredictions,
              {"zip", "base_month", "horizon_months", "predicted_value"}, rows);

  write_file(dir / snapshot_files::kBoundaries, boundaries_to_geojson(store.boundaries()).dump());
  write_file(dir / snapshot_files::kReport, to_json(report).dump(2) + "\n");
}

Store read_snapshot(const fs::path& dir, const LoadOptions& options) {
  Tables t;
  for (auto& r : table_rows(dir, snapshot_files::kStations, {"station_id", "name", "lat", "lon"})) {
    t.stations.push_back({r[0], r[1], {to_num(r[2], "stations"), to_num(r[3], "stations")}});
  }
  for (auto& r : table_rows(dir, snapshot_files::kLines, {"line_id", "name", "color_tag"})) {
    t.lines.push_back({r[0], r[1], r[2]});
  }
  for (auto& r :
       table_rows(dir, snapshot_files::kStationPath, {"line_id", "station_id", "sequence"})) {
    t.station_paths.push_back({r[0], r[1], static_cast<int>(to_num(r[2], "station_path"))});
  }
  for (auto& r :
       table_rows(dir, snapshot_files::kPrices, {"zip", "city", "state", "date", "value"})) {
    t.prices.push_back({r[0], r[1], r[2], month_cell(r[3], "locations_prices"),
                        to_num(r[4], "locations_prices")});
  }
  for (auto& r : table_rows(dir, snapshot_files::kPredictions,
                            {"zip", "base_month", "horizon_months", "predicted_value"})) {
    t.predictions.push_back({r[0], month_cell(r[1], "predictions"),
                             static_cast<int>(to_num(r[2], "predictions")),
                             to_num(r[3], "predictions")});
  }
  t.boundaries = parse_boundaries(read_file(dir / snapshot_files::kBoundaries));
  return bulk_load(std::move(t), options);
}

}  // namespace railestate
