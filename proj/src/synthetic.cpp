#include "railestate/synthetic.hpp"

#include <algorithm>
#include <random>

#include <fmt/format.h>

namespace railestate {

Tables make_synthetic_tables(const SyntheticSpec& spec) {
  std::mt19937_64 rng(spec.seed);
  Tables t;
  const int cells = spec.grid_rows * spec.grid_cols;
  const double dlat = (spec.lat_max - spec.lat_min) / spec.grid_rows;
  const double dlon = (spec.lon_max - spec.lon_min) / spec.grid_cols;

  t.boundaries.reserve(cells);
  for (int r = 0; r < spec.grid_rows; ++r) {
    for (int c = 0; c < spec.grid_cols; ++c) {
      const double la = spec.lat_min + r * dlat, lo = spec.lon_min + c * dlon;
      Ring ring{{la, lo}, {la, lo + dlon}, {la + dlat, lo + dlon}, {la + dlat, lo}, {la, lo}};
      t.boundaries.push_back(
          make_boundary(fmt::format("{:05d}", 20000 + r * spec.grid_cols + c), {Polygon{{ring}}}));
    }
  }

  // Priced ZIPs: an even stride over the grid.
  static constexpr const char* kStates[] = {"DC", "MD", "VA"};
  const int priced = std::min(spec.priced_zips, cells);
  std::uniform_real_distribution<double> start(250'000.0, 750'000.0);
  std::normal_distribution<double> step(0.003, 0.01);
  t.prices.reserve(static_cast<std::size_t>(priced) * spec.months);
  for (int i = 0; i < priced; ++i) {
    const int cell = static_cast<int>(static_cast<long long>(i) * cells / priced);
    const std::string& zip = t.boundaries[cell].zip;
    const std::string city = fmt::format("City {:02d}", i % 40);
    const char* state = kStates[(i % 40) % 3];
    double v = start(rng);
    for (int m = 0; m < spec.months; ++m) {
      t.prices.push_back({zip, city, state, make_month(2000, 1) + std::chrono::months{m}, v});
      v *= 1.0 + step(rng);
      v = std::max(v, 1'000.0);
    }
  }

  std::uniform_real_distribution<double> lat(spec.lat_min, spec.lat_max);
  std::uniform_real_distribution<double> lon(spec.lon_min, spec.lon_max);
  for (int i = 0; i < spec.stations; ++i) {
    t.stations.push_back({fmt::format("S{:04d}", i), fmt::format("Station {}", i), {lat(rng), lon(rng)}});
  }
  static constexpr const char* kColors[] = {"RD", "OR", "BL", "GR", "YL", "SV"};
  for (int l = 0; l < spec.lines; ++l) {
    const std::string id = fmt::format("L{}", l);
    t.lines.push_back({id, fmt::format("Line {}", l), kColors[l % 6]});
    int seq = 1;
    for (int i = l; i < spec.stations; i += spec.lines) {
      t.station_paths.push_back({id, t.stations[i].station_id, seq++});
    }
  }
  return t;
}

}  // namespace railestate
