#include "railestate/analytics.hpp"

#include <cmath>

#include "railestate/errors.hpp"

namespace railestate {

std::string_view to_string(PriceBand band) {
  switch (band) {
    case PriceBand::Under400k: return "Under400k";
    case PriceBand::From400kTo500k: return "From400kTo500k";
    case PriceBand::From500kTo600k: return "From500kTo600k";
    case PriceBand::Over600k: return "Over600k";
  }
  return "Unknown";
}

bool BandThresholds::valid() const {
  if (cuts.size() != 3) return false;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (!std::isfinite(cuts[i]) || cuts[i] <= 0.0) return false;
    if (i > 0 && !(cuts[i] > cuts[i - 1])) return false;
  }
  return true;
}

PriceBand classify_band(double value, const BandThresholds& thresholds) {
  const auto& c = thresholds.cuts;
  if (value < c[0]) return PriceBand::Under400k;
  if (value < c[1]) return PriceBand::From400kTo500k;
  if (value < c[2]) return PriceBand::From500kTo600k;
  return PriceBand::Over600k;
}

std::optional<double> zip_average(const Store& store, const std::string& zip,
                                  std::optional<Month> month) {
  if (month) {
    const auto* r = store.price_at(zip, *month);
    if (!r) return std::nullopt;
    return r->value;
  }
  const auto rows = store.price_rows_for_zip(zip);
  if (rows.empty()) return std::nullopt;
  // Rows are stored ascending by month within a ZIP.
  return store.prices()[rows.back()].value;
}

TrendSummary trend_summary(const Series& series) {
  if (series.size() < 2) throw Error(Errc::InsufficientData, "trend needs at least two points");
  TrendSummary t;
  t.first_month = series.front().first;
  t.last_month = series.back().first;
  t.first_value = series.front().second;
  t.last_value = series.back().second;
  t.total_change_pct = (t.last_value / t.first_value - 1.0) * 100.0;
  double sum = 0.0;
  for (std::size_t i = 1; i < series.size(); ++i) {
    sum += (series[i].second / series[i - 1].second - 1.0) * 100.0;
  }
  t.mean_monthly_change_pct = sum / static_cast<double>(series.size() - 1);
  return t;
}

Series growth_series(const Series& series, GrowthMode mode) {
  if (series.empty()) throw Error(Errc::InsufficientData, "empty series");
  if (mode == GrowthMode::Absolute) return series;
  const double base = series.front().second;
  if (!(base > 0.0)) throw Error(Errc::InsufficientData, "percent growth needs a positive base");
  Series out;
  out.reserve(series.size());
  for (const auto& [m, v] : series) out.emplace_back(m, 100.0 * (v / base - 1.0));
  out.front().second = 0.0;
  return out;
}

}  // namespace railestate
