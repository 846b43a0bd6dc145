#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "railestate/datamodel.hpp"

namespace railestate {

/// A month cell that was present in the header but empty (or non-positive)
/// for a ZIP.
struct NullObservation {
  std::string zip;
  Month month;
};

struct RawPrices {
  std::vector<PriceRecord> records;
  std::vector<NullObservation> nulls;
};

struct MonthCaps {
  double p5 = 0.0;
  double p95 = 0.0;

  friend bool operator==(const MonthCaps&, const MonthCaps&) = default;
};

struct CleaningReport {
  std::size_t rows_in = 0;
  std::size_t rows_out = 0;
  std::size_t rows_dropped_null = 0;
  std::size_t values_capped_low = 0;
  std::size_t values_capped_high = 0;
  std::map<Month, MonthCaps> per_month_caps;
  /// Months with fewer than two values; passed through without capping.
  std::vector<Month> uncapped_months;
};

nlohmann::ordered_json to_json(const CleaningReport& report);

struct CleanResult {
  std::vector<PriceRecord> records;
  CleaningReport report;
};

/// Wide price CSV: identifier columns (zip, city, state, plus any other
/// non-numeric headers, ignored) then one `YYYY-MM[-DD]` column per month.
RawPrices parse_price_csv(std::string_view text);

/// Drops nulls, then winsorizes each month's cross-section to its nearest-rank
/// 5th/95th percentiles.
CleanResult clean_records(RawPrices raw);

/// Nearest-rank percentile of ascending `sorted` values; `percent` in 1..100.
/// The 1-based rank is ceil(percent * n / 100), computed in integers.
double nearest_rank(const std::vector<double>& sorted, int percent);

struct TransitTables {
  std::vector<Station> stations;
  std::vector<Line> lines;
  std::vector<StationPath> paths;
};

/// GTFS subset: stops (stop_id, stop_name, stop_lat, stop_lon), routes
/// (route_id, route_long_name[, route_color]) and a sequence file
/// (route_id, stop_id, stop_sequence).
TransitTables parse_stations(std::string_view stops_csv, std::string_view routes_csv,
                             std::string_view sequence_csv);

inline constexpr std::string_view kDefaultZipProperty = "zip";

/// GeoJSON FeatureCollection of Polygon / MultiPolygon features in lon-lat order.
std::vector<Boundary> parse_boundaries(std::string_view geojson,
                                       std::string_view zip_property = kDefaultZipProperty);

nlohmann::json boundaries_to_geojson(std::span<const Boundary> boundaries,
                                     std::string_view zip_property = kDefaultZipProperty);

nlohmann::json polygon_parts_to_geojson(const Boundary& b);

}  // namespace railestate
