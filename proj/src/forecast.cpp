#include "railestate/forecast.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "railestate/csv.hpp"
#include "railestate/errors.hpp"

namespace railestate {

DeltaSeries derive_deltas(const Series& series) {
  if (series.size() < kMinHistory) {
    throw Error(Errc::InsufficientData, "forecast needs at least " + std::to_string(kMinHistory) +
                                            " months, got " + std::to_string(series.size()));
  }
  double sum = 0.0;
  for (std::size_t i = series.size() - kTrailingWindow; i < series.size(); ++i) {
    sum += (series[i].second / series[i - 1].second - 1.0) * 100.0;
  }
  const double mean = sum / static_cast<double>(kTrailingWindow);
  const auto longest = static_cast<std::size_t>(kForecastHorizons.back());
  return {series.back().first, std::vector<double>(longest, mean)};
}

double project(double base_value, const DeltaSeries& deltas, int horizon) {
  if (horizon < 0 || static_cast<std::size_t>(horizon) > deltas.deltas.size()) {
    throw Error(Errc::HorizonExceedsDeltas,
                "horizon " + std::to_string(horizon) + " with " +
                    std::to_string(deltas.deltas.size()) + " deltas");
  }
  double value = base_value;
  for (int t = 0; t < horizon; ++t) value *= 1.0 + deltas.deltas[static_cast<std::size_t>(t)] / 100.0;
  return value;
}

ForecastResult forecast_zip(const std::string& zip, const Series& series,
                            const DeltaSeries& deltas) {
  ForecastResult out{zip, deltas.base_month, series.back().second, {}};
  for (int h : kForecastHorizons) out.horizons[h] = project(out.base_value, deltas, h);
  return out;
}

DeltaOverrides parse_delta_overrides(std::string_view csv_text) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) return {};
  const auto& header = rows.front();
  const auto zip = csv::find_column(header, "zip");
  const auto offset = csv::find_column(header, "month_offset");
  const auto delta = csv::find_column(header, "delta_pct");
  if (!zip || !offset || !delta) {
    throw Error(Errc::MissingColumn, "delta overrides need zip, month_offset, delta_pct");
  }
  std::map<std::string, std::map<int, double>> cells;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() <= std::max({*zip, *offset, *delta})) {
      throw Error(Errc::UnparsableNumber, "delta row " + std::to_string(r));
    }
    int k = 0;
    double d = 0.0;
    const auto& ks = row[*offset];
    const auto& ds = row[*delta];
    auto [p1, e1] = std::from_chars(ks.data(), ks.data() + ks.size(), k);
    auto [p2, e2] = std::from_chars(ds.data(), ds.data() + ds.size(), d);
    if (e1 != std::errc{} || e2 != std::errc{} || p1 != ks.data() + ks.size() ||
        p2 != ds.data() + ds.size() || k < 1 || !(d > -100.0)) {
      throw Error(Errc::UnparsableNumber, "delta row " + std::to_string(r));
    }
    cells[row[*zip]][k] = d;
  }
  DeltaOverrides out;
  for (const auto& [z, by_offset] : cells) {
    std::vector<double> deltas;
    for (const auto& [k, d] : by_offset) {
      if (k != static_cast<int>(deltas.size()) + 1) {
        throw Error(Errc::InvariantViolation, "delta offsets for " + z + " are not contiguous");
      }
      deltas.push_back(d);
    }
    out[z] = std::move(deltas);
  }
  return out;
}

PredictionRun compute_predictions(const Store& store, const DeltaOverrides& overrides) {
  PredictionRun run;
  for (const auto& zip : store.zips()) {
    const Series series = series_for_zip(store, zip);
    if (series.empty()) continue;
    DeltaSeries deltas;
    if (auto it = overrides.find(zip); it != overrides.end()) {
      deltas = {series.back().first, it->second};
    } else if (series.size() >= kMinHistory) {
      deltas = derive_deltas(series);
    } else {
      run.skipped.push_back({zip, series.size()});
      continue;
    }
    const ForecastResult f = forecast_zip(zip, series, deltas);
    for (const auto& [h, v] : f.horizons) run.rows.push_back({zip, f.base_month, h, v});
  }
  return run;
}

}  // namespace railestate
