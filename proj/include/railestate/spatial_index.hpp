#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "railestate/datamodel.hpp"
#include "railestate/geometry.hpp"
#include "railestate/rtree.hpp"

namespace railestate {

inline constexpr double kDefaultNearbyRadiusM = 1600.0;

struct StationHit {
  Station station;
  double distance_m = 0.0;

  friend bool operator==(const StationHit&, const StationHit&) = default;
};

struct ZipHit {
  std::string zip;
  double distance_m = 0.0;

  friend bool operator==(const ZipHit&, const ZipHit&) = default;
};

/// Boxes (possibly two, when the circle crosses the antimeridian) covering
/// every point within `radius_m` great-circle meters of `center`.
std::vector<Box> radius_query_boxes(const GeoPoint& center, double radius_m);

/// R-trees over ZIP boundary boxes, ZIP centroids and station points. Owns
/// copies of the indexed geometry; immutable once built.
class SpatialIndex {
 public:
  SpatialIndex() = default;
  SpatialIndex(std::span<const Boundary> boundaries, std::span<const Station> stations);

  /// The ZIP whose boundary contains `p`; the smallest-area one when several
  /// do (ties by ZIP string).
  std::optional<std::string> enclosing_zip(const GeoPoint& p) const;

  /// Stations within `radius_m`, ascending by distance, ties by station_id.
  std::vector<StationHit> stations_within_radius(const GeoPoint& center, double radius_m) const;

  /// ZIPs whose centroid is within `radius_m`, ascending by distance, ties by zip.
  std::vector<ZipHit> zips_within_radius(const GeoPoint& center, double radius_m) const;

  // Unindexed counterparts, kept for benchmarking the index.
  std::vector<StationHit> scan_stations_within_radius(const GeoPoint& center,
                                                      double radius_m) const;
  std::vector<ZipHit> scan_zips_within_radius(const GeoPoint& center, double radius_m) const;
  std::optional<std::string> scan_enclosing_zip(const GeoPoint& p) const;

  const Boundary* boundary(const std::string& zip) const;
  std::span<const Boundary> boundaries() const { return boundaries_; }
  std::span<const Station> stations() const { return stations_; }

  bool check_invariants() const;

 private:
  std::vector<Boundary> boundaries_;
  std::vector<double> areas_;
  std::vector<Station> stations_;
  std::unordered_map<std::string, std::uint32_t> zip_pos_;
  RTree<std::uint32_t> boundary_tree_;
  RTree<std::uint32_t> centroid_tree_;
  RTree<std::uint32_t> station_tree_;
};

/// build_index: equivalent to constructing SpatialIndex from the store.
SpatialIndex build_index(const Store& store);

}  // namespace railestate
