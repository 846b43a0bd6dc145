#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "railestate/calendar.hpp"
#include "railestate/geometry.hpp"

namespace railestate {

struct Station {
  std::string station_id;
  std::string name;
  GeoPoint location;

  friend bool operator==(const Station&, const Station&) = default;
};

struct Line {
  std::string line_id;
  std::string name;
  std::string color_tag;

  friend bool operator==(const Line&, const Line&) = default;
};

struct StationPath {
  std::string line_id;
  std::string station_id;
  int sequence = 0;

  friend bool operator==(const StationPath&, const StationPath&) = default;
};

/// One (ZIP, month) valuation in USD.
struct PriceRecord {
  std::string zip;
  std::string city;
  std::string state;
  Month month;
  double value = 0.0;

  friend bool operator==(const PriceRecord&, const PriceRecord&) = default;
};

struct Prediction {
  std::string zip;
  Month base_month;
  int horizon_months = 0;
  double predicted_value = 0.0;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// The six logical tables, as handed to bulk_load.
struct Tables {
  std::vector<Station> stations;
  std::vector<Line> lines;
  std::vector<StationPath> station_paths;
  std::vector<Boundary> boundaries;
  std::vector<PriceRecord> prices;
  std::vector<Prediction> predictions;
};

struct CoverageWindow {
  Month first = make_month(2000, 1);
  Month last = make_month(2025, 12);

  bool contains(Month m) const { return m >= first && m <= last; }
};

struct LoadOptions {
  CoverageWindow coverage;
};

using SeriesPoint = std::pair<Month, double>;
using Series = std::vector<SeriesPoint>;

/// Immutable in-process store over the six tables with attribute indexes.
///
/// Price rows are kept sorted by (zip, month) so a ZIP's history is a
/// contiguous slice. Everything is read-only after bulk_load, so a Store may
/// be shared between threads without synchronization.
class Store {
 public:
  Store() = default;

  const std::vector<Station>& stations() const { return tables_.stations; }
  const std::vector<Line>& lines() const { return tables_.lines; }
  const std::vector<StationPath>& station_paths() const { return tables_.station_paths; }
  const std::vector<Boundary>& boundaries() const { return tables_.boundaries; }
  const std::vector<PriceRecord>& prices() const { return tables_.prices; }
  const std::vector<Prediction>& predictions() const { return tables_.predictions; }
  const Tables& tables() const { return tables_; }
  const CoverageWindow& coverage() const { return coverage_; }

  /// Row positions into prices(), ascending.
  std::span<const std::size_t> price_rows_for_zip(const std::string& zip) const;
  std::span<const std::size_t> price_rows_for_city(const std::string& city) const;
  std::span<const std::size_t> path_rows_for_line(const std::string& line_id) const;
  std::span<const std::size_t> prediction_rows_for_zip(const std::string& zip) const;

  const PriceRecord* price_at(const std::string& zip, Month month) const;
  const Station* find_station(const std::string& station_id) const;
  const Line* find_line(const std::string& line_id) const;
  const Boundary* find_boundary(const std::string& zip) const;

  /// Distinct values, sorted.
  std::vector<std::string> cities() const;
  std::vector<std::string> zips() const;
  std::vector<std::string> states() const;

  /// Earliest and latest price month, if any prices are loaded.
  std::optional<std::pair<Month, Month>> price_month_range() const;

  friend Store bulk_load(Tables tables, const LoadOptions& options);

 private:
  using RowIndex = std::unordered_map<std::string, std::vector<std::size_t>>;

  static std::span<const std::size_t> lookup(const RowIndex& index, const std::string& key);

  Tables tables_;
  CoverageWindow coverage_;
  RowIndex by_zip_;
  RowIndex by_city_;
  RowIndex paths_by_line_;
  RowIndex predictions_by_zip_;
  std::map<std::pair<std::string, Month>, std::size_t> by_zip_month_;
  std::unordered_map<std::string, std::size_t> station_pos_;
  std::unordered_map<std::string, std::size_t> line_pos_;
  std::unordered_map<std::string, std::size_t> boundary_pos_;
};

/// Validates every row, rejects duplicate keys and dangling references, and
/// builds the attribute indexes. Throws Error with DuplicateKey,
/// ForeignKeyViolation or InvariantViolation.
Store bulk_load(Tables tables, const LoadOptions& options = {});

/// Ascending by month; empty for an unknown ZIP.
Series series_for_zip(const Store& store, const std::string& zip);

/// Stations of a line ordered by path sequence. Throws Error(UnknownLine).
std::vector<Station> stations_for_line(const Store& store, const std::string& line_id);

/// Lines serving a station, ordered by line_id.
std::vector<Line> lines_for_station(const Store& store, const std::string& station_id);

bool is_zip_code(std::string_view text);

}  // namespace railestate
