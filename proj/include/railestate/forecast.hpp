#pragma once

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "railestate/datamodel.hpp"

namespace railestate {

inline constexpr std::array<int, 3> kForecastHorizons{1, 3, 12};
inline constexpr std::size_t kTrailingWindow = 12;
inline constexpr std::size_t kMinHistory = kTrailingWindow + 1;

/// Monthly percent changes applied one per projected month.
struct DeltaSeries {
  Month base_month;
  std::vector<double> deltas;
};

struct ForecastResult {
  std::string zip;
  Month base_month;
  double base_value = 0.0;
  std::map<int, double> horizons;
};

/// Constant delta equal to the mean of the last twelve month-over-month
/// percent changes, repeated over the longest horizon. Throws
/// Error(InsufficientData) below thirteen observations.
DeltaSeries derive_deltas(const Series& series);

/// value_{t+1} = value_t * (1 + delta_t / 100), applied `horizon` times.
/// Throws Error(HorizonExceedsDeltas) when there are too few deltas.
double project(double base_value, const DeltaSeries& deltas, int horizon);

ForecastResult forecast_zip(const std::string& zip, const Series& series,
                            const DeltaSeries& deltas);

/// Delta overrides keyed by ZIP; index k holds the change for month k + 1.
using DeltaOverrides = std::map<std::string, std::vector<double>>;

/// CSV with columns zip, month_offset (1-based), delta_pct.
DeltaOverrides parse_delta_overrides(std::string_view csv_text);

struct SkippedZip {
  std::string zip;
  std::size_t months = 0;
};

struct PredictionRun {
  std::vector<Prediction> rows;
  std::vector<SkippedZip> skipped;
};

/// Three Prediction rows per ZIP with at least thirteen months of history.
PredictionRun compute_predictions(const Store& store, const DeltaOverrides& overrides = {});

}  // namespace railestate
