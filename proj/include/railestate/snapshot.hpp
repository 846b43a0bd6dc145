#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railestate/datamodel.hpp"
#include "railestate/forecast.hpp"
#include "railestate/ingest.hpp"
#include "railestate/spatial_index.hpp"

namespace railestate {

/// Input file names inside an ingest directory.
namespace source_files {
inline constexpr std::string_view kPrices = "prices.csv";
inline constexpr std::string_view kStops = "stops.txt";
inline constexpr std::string_view kRoutes = "routes.txt";
inline constexpr std::string_view kSequences = "stop_sequences.txt";
inline constexpr std::string_view kBoundaries = "boundaries.geojson";
inline constexpr std::string_view kDeltas = "deltas.csv";  // optional
}  // namespace source_files

/// Output file names inside a snapshot directory.
namespace snapshot_files {
inline constexpr std::string_view kStations = "stations.csv";
inline constexpr std::string_view kLines = "lines.csv";
inline constexpr std::string_view kStationPath = "station_path.csv";
inline constexpr std::string_view kBoundaries = "boundaries.geojson";
inline constexpr std::string_view kPrices = "locations_prices.csv";
inline constexpr std::string_view kPredictions = "predictions.csv";
inline constexpr std::string_view kReport = "cleaning_report.json";
}  // namespace snapshot_files

struct IngestSources {
  std::string prices_csv;
  std::string stops_csv;
  std::string routes_csv;
  std::string sequences_csv;
  std::string boundaries_geojson;
  std::optional<std::string> deltas_csv;
};

struct IngestOptions {
  std::string zip_property{kDefaultZipProperty};
  LoadOptions load;
};

struct IngestResult {
  Store store;
  CleaningReport report;
  std::vector<SkippedZip> forecast_skips;
};

/// parse -> clean -> load -> forecast -> reload with the Predictions table.
IngestResult run_ingest(const IngestSources& sources, const IngestOptions& options = {});

IngestSources read_sources(const std::filesystem::path& dir);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

void write_snapshot(const std::filesystem::path& dir, const Store& store,
                    const CleaningReport& report);

Store read_snapshot(const std::filesystem::path& dir, const LoadOptions& options = {});

/// A loaded store with its spatial index.
struct Dataset {
  Store store;
  SpatialIndex index;

  explicit Dataset(Store s) : store(std::move(s)), index(build_index(store)) {}
};

}  // namespace railestate
