#pragma once

#include <span>
#include <string>
#include <vector>

namespace railestate {

/// WGS84 coordinate in degrees. Planar operations treat lon as x and lat as y.
struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p);

/// Axis-aligned lat/lon rectangle, closed on all sides.
struct Box {
  double min_lat = 0.0;
  double min_lon = 0.0;
  double max_lat = 0.0;
  double max_lon = 0.0;

  static Box around(const GeoPoint& p) { return {p.lat, p.lon, p.lat, p.lon}; }

  bool contains(const GeoPoint& p) const {
    return p.lat >= min_lat && p.lat <= max_lat && p.lon >= min_lon && p.lon <= max_lon;
  }
  bool contains(const Box& b) const {
    return b.min_lat >= min_lat && b.max_lat <= max_lat && b.min_lon >= min_lon &&
           b.max_lon <= max_lon;
  }
  bool intersects(const Box& b) const {
    return b.min_lat <= max_lat && b.max_lat >= min_lat && b.min_lon <= max_lon &&
           b.max_lon >= min_lon;
  }
  void expand(const Box& b);
  void expand(const GeoPoint& p) { expand(around(p)); }

  friend bool operator==(const Box&, const Box&) = default;
};

/// Closed ring: first point equals last point.
using Ring = std::vector<GeoPoint>;

/// One polygon part: exterior ring followed by zero or more holes.
struct Polygon {
  std::vector<Ring> rings;

  friend bool operator==(const Polygon&, const Polygon&) = default;
};

/// A ZIP region. MultiPolygon ZIPs keep every part in one Boundary.
struct Boundary {
  std::string zip;
  std::vector<Polygon> parts;
  GeoPoint centroid;
  Box bbox;

  std::vector<const Ring*> rings() const;
};

inline constexpr double kEarthMeanRadiusM = 6'371'008.8;

/// Great-circle distance on the mean-radius sphere.
double haversine_m(const GeoPoint& a, const GeoPoint& b);

/// Signed shoelace area in square degrees; positive for counter-clockwise
/// rings in (lon, lat) space.
double signed_ring_area(const Ring& ring);

/// Net area: exteriors count positive, holes negative, regardless of winding.
double boundary_area(const Boundary& b);

/// Even-odd membership across every ring of every part. Points on an edge or
/// vertex count as inside.
bool point_in_polygon(const GeoPoint& p, const Boundary& b);

/// Area-weighted centroid, holes weighted negatively. Throws
/// Error(DegenerateGeometry) when the net area is zero.
GeoPoint polygon_centroid(const Boundary& b);

GeoPoint vertex_mean(const Boundary& b);

Box bounding_box(const Boundary& b);

/// Builds a Boundary with derived centroid and bbox. Falls back to the
/// vertex mean when the geometry has zero area.
Boundary make_boundary(std::string zip, std::vector<Polygon> parts);

}  // namespace railestate
