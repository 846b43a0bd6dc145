#pragma once

#include <cstdint>

#include "railestate/datamodel.hpp"

namespace railestate {

/// Deterministic metro-sized dataset for benchmarks and property tests.
struct SyntheticSpec {
  int grid_rows = 100;
  int grid_cols = 100;
  int priced_zips = 1000;
  int months = 300;  // from 2000-01
  int stations = 200;
  int lines = 6;
  std::uint64_t seed = 7;
  // Grid extent.
  double lat_min = 38.70, lat_max = 39.10;
  double lon_min = -77.40, lon_max = -76.80;
};

/// Rectangular ZIP cells named 20000 + cell index; priced ZIPs are spread
/// across the grid; prices follow a multiplicative random walk.
Tables make_synthetic_tables(const SyntheticSpec& spec = {});

}  // namespace railestate
