#include "railestate/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "railestate/errors.hpp"

namespace railestate {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

bool on_segment(const GeoPoint& p, const GeoPoint& a, const GeoPoint& b) {
  const double cross = (b.lon - a.lon) * (p.lat - a.lat) - (b.lat - a.lat) * (p.lon - a.lon);
  if (cross != 0.0) return false;
  return p.lon >= std::min(a.lon, b.lon) && p.lon <= std::max(a.lon, b.lon) &&
         p.lat >= std::min(a.lat, b.lat) && p.lat <= std::max(a.lat, b.lat);
}

}  // namespace

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) && p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

void Box::expand(const Box& b) {
  min_lat = std::min(min_lat, b.min_lat);
  min_lon = std::min(min_lon, b.min_lon);
  max_lat = std::max(max_lat, b.max_lat);
  max_lon = std::max(max_lon, b.max_lon);
}

std::vector<const Ring*> Boundary::rings() const {
  std::vector<const Ring*> out;
  for (const auto& part : parts) {
    for (const auto& ring : part.rings) out.push_back(&ring);
  }
  return out;
}

double haversine_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlambda = (b.lon - a.lon) * kDegToRad;
  const double s1 = std::sin(dphi / 2.0);
  const double s2 = std::sin(dlambda / 2.0);
  const double h = s1 * s1 + std::cos(phi1) * std::cos(phi2) * s2 * s2;
  return 2.0 * kEarthMeanRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double signed_ring_area(const Ring& ring) {
  double twice = 0.0;
  for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
    twice += ring[i].lon * ring[i + 1].lat - ring[i + 1].lon * ring[i].lat;
  }
  return twice / 2.0;
}

double boundary_area(const Boundary& b) {
  double total = 0.0;
  for (const auto& part : b.parts) {
    for (std::size_t r = 0; r < part.rings.size(); ++r) {
      const double a = std::abs(signed_ring_area(part.rings[r]));
      total += r == 0 ? a : -a;
    }
  }
  return total;
}

bool point_in_polygon(const GeoPoint& p, const Boundary& b) {
  if (!b.bbox.contains(p)) return false;
  bool inside = false;
  for (const auto& part : b.parts) {
    for (const auto& ring : part.rings) {
      for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const GeoPoint& a = ring[i];
        const GeoPoint& c = ring[i + 1];
        if (on_segment(p, a, c)) return true;
        if ((a.lat > p.lat) != (c.lat > p.lat)) {
          const double x = a.lon + (p.lat - a.lat) * (c.lon - a.lon) / (c.lat - a.lat);
          if (p.lon < x) inside = !inside;
        }
      }
    }
  }
  return inside;
}

GeoPoint polygon_centroid(const Boundary& b) {
  double area = 0.0, cx = 0.0, cy = 0.0;
  for (const auto& part : b.parts) {
    for (std::size_t r = 0; r < part.rings.size(); ++r) {
      const Ring& ring = part.rings[r];
      const double signed_area = signed_ring_area(ring);
      if (signed_area == 0.0) continue;
      double rx = 0.0, ry = 0.0;
      for (std::size_t i = 0; i + 1 < ring.size(); ++i) {
        const double cross = ring[i].lon * ring[i + 1].lat - ring[i + 1].lon * ring[i].lat;
        rx += (ring[i].lon + ring[i + 1].lon) * cross;
        ry += (ring[i].lat + ring[i + 1].lat) * cross;
      }
      // Ring centroid is (rx, ry) / (6 * signed_area); weight by the role-signed area.
      const double weight = r == 0 ? std::abs(signed_area) : -std::abs(signed_area);
      cx += weight * rx / (6.0 * signed_area);
      cy += weight * ry / (6.0 * signed_area);
      area += weight;
    }
  }
  if (area == 0.0 || !std::isfinite(area)) {
    throw Error(Errc::DegenerateGeometry, "zero-area boundary " + b.zip);
  }
  return {cy / area, cx / area};
}

GeoPoint vertex_mean(const Boundary& b) {
  double lat = 0.0, lon = 0.0;
  std::size_t n = 0;
  for (const Ring* ring : b.rings()) {
    // Skip the closing vertex so it is not counted twice.
    for (std::size_t i = 0; i + 1 < ring->size(); ++i) {
      lat += (*ring)[i].lat;
      lon += (*ring)[i].lon;
      ++n;
    }
  }
  if (n == 0) return {};
  return {lat / static_cast<double>(n), lon / static_cast<double>(n)};
}

Box bounding_box(const Boundary& b) {
  bool first = true;
  Box box;
  for (const Ring* ring : b.rings()) {
    for (const auto& p : *ring) {
      if (first) {
        box = Box::around(p);
        first = false;
      } else {
        box.expand(p);
      }
    }
  }
  return box;
}

Boundary make_boundary(std::string zip, std::vector<Polygon> parts) {
  Boundary b;
  b.zip = std::move(zip);
  b.parts = std::move(parts);
  b.bbox = bounding_box(b);
  try {
    b.centroid = polygon_centroid(b);
  } catch (const Error&) {
    b.centroid = vertex_mean(b);
  }
  return b;
}

}  // namespace railestate
