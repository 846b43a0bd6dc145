#include "railestate/spatial_index.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <tuple>

namespace railestate {

namespace {

constexpr double kRadToDeg = 180.0 / std::numbers::pi;
// Slack so that floating error in the box never drops a point the exact
// haversine test would keep (about a centimeter).
constexpr double kBoxPadDeg = 1e-7;

void require_radius(double radius_m) {
  if (!(radius_m >= 0.0)) throw std::invalid_argument("radius must be non-negative");
}

template <class Hit, class Key>
void sort_hits(std::vector<Hit>& hits, Key key) {
  std::sort(hits.begin(), hits.end(), [&](const Hit& a, const Hit& b) {
    return std::tie(a.distance_m, key(a)) < std::tie(b.distance_m, key(b));
  });
}

void sort_stations(std::vector<StationHit>& hits) {
  sort_hits(hits, [](const StationHit& h) -> const std::string& { return h.station.station_id; });
}

void sort_zips(std::vector<ZipHit>& hits) {
  sort_hits(hits, [](const ZipHit& h) -> const std::string& { return h.zip; });
}

}  // namespace

std::vector<Box> radius_query_boxes(const GeoPoint& center, double radius_m) {
  require_radius(radius_m);
  const double angular = radius_m / kEarthMeanRadiusM;
  if (angular >= std::numbers::pi / 2.0) return {Box{-90.0, -180.0, 90.0, 180.0}};

  const double dlat = angular * kRadToDeg + kBoxPadDeg;
  const double min_lat = center.lat - dlat;
  const double max_lat = center.lat + dlat;
  if (min_lat <= -90.0 || max_lat >= 90.0) {
    return {Box{std::max(min_lat, -90.0), -180.0, std::min(max_lat, 90.0), 180.0}};
  }
  const double ratio = std::sin(angular) / std::cos(center.lat / kRadToDeg);
  if (ratio >= 1.0) return {Box{min_lat, -180.0, max_lat, 180.0}};
  const double dlon = std::asin(ratio) * kRadToDeg + kBoxPadDeg;

  const double min_lon = center.lon - dlon;
  const double max_lon = center.lon + dlon;
  if (min_lon < -180.0) {
    return {Box{min_lat, min_lon + 360.0, max_lat, 180.0}, Box{min_lat, -180.0, max_lat, max_lon}};
  }
  if (max_lon > 180.0) {
    return {Box{min_lat, min_lon, max_lat, 180.0}, Box{min_lat, -180.0, max_lat, max_lon - 360.0}};
  }
  return {Box{min_lat, min_lon, max_lat, max_lon}};
}

SpatialIndex::SpatialIndex(std::span<const Boundary> boundaries, std::span<const Station> stations)
    : boundaries_(boundaries.begin(), boundaries.end()),
      stations_(stations.begin(), stations.end()) {
  std::vector<RTree<std::uint32_t>::Item> bbox_items, centroid_items, station_items;
  areas_.reserve(boundaries_.size());
  for (std::uint32_t i = 0; i < boundaries_.size(); ++i) {
    zip_pos_.emplace(boundaries_[i].zip, i);
    areas_.push_back(std::abs(boundary_area(boundaries_[i])));
    bbox_items.emplace_back(boundaries_[i].bbox, i);
    centroid_items.emplace_back(Box::around(boundaries_[i].centroid), i);
  }
  for (std::uint32_t i = 0; i < stations_.size(); ++i) {
    station_items.emplace_back(Box::around(stations_[i].location), i);
  }
  boundary_tree_ = RTree<std::uint32_t>(std::move(bbox_items));
  centroid_tree_ = RTree<std::uint32_t>(std::move(centroid_items));
  station_tree_ = RTree<std::uint32_t>(std::move(station_items));
}

std::optional<std::string> SpatialIndex::enclosing_zip(const GeoPoint& p) const {
  std::optional<std::uint32_t> best;
  boundary_tree_.query(Box::around(p), [&](std::uint32_t i) {
    if (!point_in_polygon(p, boundaries_[i])) return;
    if (!best || std::tie(areas_[i], boundaries_[i].zip) <
                     std::tie(areas_[*best], boundaries_[*best].zip)) {
      best = i;
    }
  });
  if (!best) return std::nullopt;
  return boundaries_[*best].zip;
}

std::optional<std::string> SpatialIndex::scan_enclosing_zip(const GeoPoint& p) const {
  std::optional<std::uint32_t> best;
  for (std::uint32_t i = 0; i < boundaries_.size(); ++i) {
    if (!point_in_polygon(p, boundaries_[i])) continue;
    if (!best || std::tie(areas_[i], boundaries_[i].zip) <
                     std::tie(areas_[*best], boundaries_[*best].zip)) {
      best = i;
    }
  }
  if (!best) return std::nullopt;
  return boundaries_[*best].zip;
}

std::vector<StationHit> SpatialIndex::stations_within_radius(const GeoPoint& center,
                                                             double radius_m) const {
  std::vector<StationHit> hits;
  for (const Box& box : radius_query_boxes(center, radius_m)) {
    station_tree_.query(box, [&](std::uint32_t i) {
      const double d = haversine_m(center, stations_[i].location);
      if (d <= radius_m) hits.push_back({stations_[i], d});
    });
  }
  sort_stations(hits);
  // Two boxes can only overlap on the antimeridian line itself.
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

std::vector<StationHit> SpatialIndex::scan_stations_within_radius(const GeoPoint& center,
                                                                  double radius_m) const {
  require_radius(radius_m);
  std::vector<StationHit> hits;
  for (const auto& s : stations_) {
    const double d = haversine_m(center, s.location);
    if (d <= radius_m) hits.push_back({s, d});
  }
  sort_stations(hits);
  return hits;
}

std::vector<ZipHit> SpatialIndex::zips_within_radius(const GeoPoint& center,
                                                     double radius_m) const {
  std::vector<ZipHit> hits;
  for (const Box& box : radius_query_boxes(center, radius_m)) {
    centroid_tree_.query(box, [&](std::uint32_t i) {
      const double d = haversine_m(center, boundaries_[i].centroid);
      if (d <= radius_m) hits.push_back({boundaries_[i].zip, d});
    });
  }
  sort_zips(hits);
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

std::vector<ZipHit> SpatialIndex::scan_zips_within_radius(const GeoPoint& center,
                                                          double radius_m) const {
  require_radius(radius_m);
  std::vector<ZipHit> hits;
  for (const auto& b : boundaries_) {
    const double d = haversine_m(center, b.centroid);
    if (d <= radius_m) hits.push_back({b.zip, d});
  }
  sort_zips(hits);
  return hits;
}

const Boundary* SpatialIndex::boundary(const std::string& zip) const {
  auto it = zip_pos_.find(zip);
  return it == zip_pos_.end() ? nullptr : &boundaries_[it->second];
}

bool SpatialIndex::check_invariants() const {
  return boundary_tree_.check_invariants() && centroid_tree_.check_invariants() &&
         station_tree_.check_invariants();
}

SpatialIndex build_index(const Store& store) {
  return SpatialIndex(store.boundaries(), store.stations());
}

}  // namespace railestate
