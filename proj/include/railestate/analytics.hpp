#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "railestate/datamodel.hpp"

namespace railestate {

enum class PriceBand { Under400k, From400kTo500k, From500kTo600k, Over600k };

std::string_view to_string(PriceBand band);

/// Ascending USD cut points; the default matches the fixed map legend.
struct BandThresholds {
  std::vector<double> cuts{400'000.0, 500'000.0, 600'000.0};

  /// Three strictly ascending, finite, positive values.
  bool valid() const;
};

/// Half-open, lower-inclusive bands: [0, c0), [c0, c1), [c1, c2), [c2, inf).
PriceBand classify_band(double value, const BandThresholds& thresholds = {});

/// The ZIP's value for `month`, or for its latest month when none is given.
std::optional<double> zip_average(const Store& store, const std::string& zip,
                                  std::optional<Month> month = std::nullopt);

struct TrendSummary {
  Month first_month;
  Month last_month;
  double first_value = 0.0;
  double last_value = 0.0;
  double total_change_pct = 0.0;
  double mean_monthly_change_pct = 0.0;
};

/// Throws Error(InsufficientData) for fewer than two points.
TrendSummary trend_summary(const Series& series);

enum class GrowthMode { Absolute, Percent };

/// Percent mode rebases to 100 * (v / v0 - 1). Throws Error(InsufficientData)
/// for an empty series or a non-positive base in percent mode.
Series growth_series(const Series& series, GrowthMode mode);

}  // namespace railestate
