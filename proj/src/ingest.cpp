#include "railestate/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "railestate/csv.hpp"
#include "railestate/errors.hpp"

namespace railestate {

namespace {

using nlohmann::json;

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::string normalize_zip(std::string zip) {
  if (!zip.empty() && zip.size() < 5 &&
      std::all_of(zip.begin(), zip.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    zip.insert(0, 5 - zip.size(), '0');
  }
  return zip;
}

struct Columns {
  const csv::Row& header;
  std::string_view file;

  std::size_t require(std::string_view name) const {
    auto col = csv::find_column(header, name);
    if (!col) throw Error(Errc::MissingColumn, std::string(file) + ": " + std::string(name));
    return *col;
  }
};

const std::string& cell(const csv::Row& row, std::size_t col) {
  static const std::string empty;
  return col < row.size() ? row[col] : empty;
}

}  // namespace


nlohmann::ordered_json to_json(const CleaningReport& report) {
  nlohmann::ordered_json caps = nlohmann::ordered_json::object();
  for (const auto& [month, c] : report.per_month_caps) {
    caps[format_month(month)] = {{"p5", c.p5}, {"p95", c.p95}};
  }
  nlohmann::ordered_json uncapped = nlohmann::ordered_json::array();
  for (Month m : report.uncapped_months) uncapped.push_back(format_month(m));
  return {{"rows_in", report.rows_in},
          {"rows_out", report.rows_out},
          {"rows_dropped_null", report.rows_dropped_null},
          {"values_capped_low", report.values_capped_low},
          {"values_capped_high", report.values_capped_high},
          {"per_month_caps", caps},
          {"uncapped_months", uncapped}};
}

RawPrices parse_price_csv(std::string_view text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(Errc::MalformedHeader, "price CSV has no header row");
  const auto& header = rows.front();

  std::optional<std::size_t> zip_col, city_col, state_col;
  std::vector<std::pair<std::size_t, Month>> month_cols;
  std::set<Month> seen_months;
  for (std::size_t c = 0; c < header.size(); ++c) {
    const std::string name = trim(header[c]);
    if (!name.empty() && std::isdigit(static_cast<unsigned char>(name.front()))) {
      auto m = parse_month(name);
      if (!m) throw Error(Errc::UnparsableDate, "column " + std::to_string(c) + " '" + name + "'");
      if (!seen_months.insert(*m).second) {
        throw Error(Errc::MalformedHeader, "duplicate month column " + name);
      }
      month_cols.emplace_back(c, *m);
      continue;
    }
    const std::string key = lower(name);
    if (key == "zip" || key == "regionname") zip_col = c;
    if (key == "city") city_col = c;
    if (key == "state") state_col = c;
  }
  if (!zip_col || !city_col || !state_col) {
    throw Error(Errc::MalformedHeader, "price CSV header needs zip, city and state columns");
  }

  RawPrices out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() > header.size()) {
      throw Error(Errc::MalformedHeader, "row " + std::to_string(r) + " has more cells than header");
    }
    const std::string zip = normalize_zip(trim(cell(row, *zip_col)));
    const std::string city = trim(cell(row, *city_col));
    const std::string state = trim(cell(row, *state_col));
    for (const auto& [c, month] : month_cols) {
      const std::string raw = trim(cell(row, c));
      if (raw.empty()) {
        out.nulls.push_back({zip, month});
        continue;
      }
      auto v = to_double(raw);
      if (!v) {
        throw Error(Errc::UnparsableNumber,
                    "row " + std::to_string(r) + ", column " + std::to_string(c) + " '" + raw + "'");
      }
      if (*v <= 0.0) {
        out.nulls.push_back({zip, month});
        continue;
      }
      out.records.push_back({zip, city, state, month, *v});
    }
  }
  return out;
}

double nearest_rank(const std::vector<double>& sorted, int percent) {
  const auto n = static_cast<long long>(sorted.size());
  long long rank = (percent * n + 99) / 100;
  rank = std::clamp(rank, 1LL, n);
  return sorted[static_cast<std::size_t>(rank - 1)];
}

CleanResult clean_records(RawPrices raw) {
  CleanResult out;
  auto& report = out.report;
  report.rows_in = raw.records.size() + raw.nulls.size();
  report.rows_dropped_null = raw.nulls.size();
  out.records = std::move(raw.records);
  report.rows_out = out.records.size();

  std::map<Month, std::vector<double>> by_month;
  for (const auto& r : out.records) by_month[r.month].push_back(r.value);
  for (auto& [month, values] : by_month) {
    if (values.size() < 2) {
      report.uncapped_months.push_back(month);
      continue;
    }
    std::sort(values.begin(), values.end());
    report.per_month_caps[month] = {nearest_rank(values, 5), nearest_rank(values, 95)};
  }
  for (auto& r : out.records) {
    auto it = report.per_month_caps.find(r.month);
    if (it == report.per_month_caps.end()) continue;
    if (r.value < it->second.p5) {
      r.value = it->second.p5;
      ++report.values_capped_low;
    } else if (r.value > it->second.p95) {
      r.value = it->second.p95;
      ++report.values_capped_high;
    }
  }
  return out;
}

TransitTables parse_stations(std::string_view stops_csv, std::string_view routes_csv,
                             std::string_view sequence_csv) {
  TransitTables out;

  const auto stops = csv::parse(stops_csv);
  if (stops.empty()) throw Error(Errc::MissingColumn, "stops: empty file");
  {
    Columns cols{stops.front(), "stops"};
    const auto id = cols.require("stop_id"), name = cols.require("stop_name"),
               lat = cols.require("stop_lat"), lon = cols.require("stop_lon");
    for (std::size_t r = 1; r < stops.size(); ++r) {
      auto la = to_double(trim(cell(stops[r], lat)));
      auto lo = to_double(trim(cell(stops[r], lon)));
      if (!la || !lo) {
        throw Error(Errc::UnparsableNumber, "stops row " + std::to_string(r) + " coordinates");
      }
      out.stations.push_back({trim(cell(stops[r], id)), trim(cell(stops[r], name)), {*la, *lo}});
    }
  }

  const auto routes = csv::parse(routes_csv);
  if (routes.empty()) throw Error(Errc::MissingColumn, "routes: empty file");
  {
    Columns cols{routes.front(), "routes"};
    const auto id = cols.require("route_id"), name = cols.require("route_long_name");
    const auto color = csv::find_column(routes.front(), "route_color");
    for (std::size_t r = 1; r < routes.size(); ++r) {
      out.lines.push_back({trim(cell(routes[r], id)), trim(cell(routes[r], name)),
                           color ? trim(cell(routes[r], *color)) : std::string{}});
    }
  }

  std::unordered_set<std::string> stop_ids, route_ids;
  for (const auto& s : out.stations) stop_ids.insert(s.station_id);
  for (const auto& l : out.lines) route_ids.insert(l.line_id);

  const auto seq = csv::parse(sequence_csv);
  if (seq.empty()) throw Error(Errc::MissingColumn, "stop_sequences: empty file");
  {
    Columns cols{seq.front(), "stop_sequences"};
    const auto route = cols.require("route_id"), stop = cols.require("stop_id"),
               order = cols.require("stop_sequence");
    for (std::size_t r = 1; r < seq.size(); ++r) {
      StationPath p{trim(cell(seq[r], route)), trim(cell(seq[r], stop)), 0};
      if (!route_ids.contains(p.line_id)) throw Error(Errc::DanglingReference, "route_id " + p.line_id);
      if (!stop_ids.contains(p.station_id)) throw Error(Errc::DanglingReference, "stop_id " + p.station_id);
      const std::string raw = trim(cell(seq[r], order));
      auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), p.sequence);
      if (ec != std::errc{} || ptr != raw.data() + raw.size() || raw.empty() || p.sequence < 0) {
        throw Error(Errc::UnparsableNumber, "stop_sequences row " + std::to_string(r));
      }
      out.paths.push_back(std::move(p));
    }
  }
  std::stable_sort(out.paths.begin(), out.paths.end(), [](const auto& a, const auto& b) {
    return std::tie(a.line_id, a.sequence) < std::tie(b.line_id, b.sequence);
  });
  return out;
}

namespace {

Ring parse_ring(const json& coords, std::size_t feature) {
  if (!coords.is_array()) throw Error(Errc::UnclosedRing, "feature " + std::to_string(feature));
  Ring ring;
  ring.reserve(coords.size());
  for (const auto& pos : coords) {
    if (!pos.is_array() || pos.size() < 2 || !pos[0].is_number() || !pos[1].is_number()) {
      throw Error(Errc::InvariantViolation, "feature " + std::to_string(feature) + " bad position");
    }
    ring.push_back({pos[1].get<double>(), pos[0].get<double>()});
  }
  if (ring.size() < 4 || ring.front() != ring.back()) {
    throw Error(Errc::UnclosedRing, "feature " + std::to_string(feature));
  }
  return ring;
}

Polygon parse_polygon(const json& rings, std::size_t feature) {
  if (!rings.is_array() || rings.empty()) {
    throw Error(Errc::UnclosedRing, "feature " + std::to_string(feature) + " has no rings");
  }
  Polygon poly;
  for (const auto& r : rings) poly.rings.push_back(parse_ring(r, feature));
  return poly;
}

std::string zip_value(const json& v) {
  if (v.is_string()) return normalize_zip(v.get<std::string>());
  if (v.is_number_integer()) return normalize_zip(std::to_string(v.get<long long>()));
  return {};
}

json ring_json(const Ring& ring) {
  json out = json::array();
  for (const auto& p : ring) out.push_back({p.lon, p.lat});
  return out;
}

}  // namespace

std::vector<Boundary> parse_boundaries(std::string_view geojson, std::string_view zip_property) {
  json doc;
  try {
    doc = json::parse(geojson);
  } catch (const json::parse_error& e) {
    throw Error(Errc::UnsupportedGeometry, std::string("invalid GeoJSON: ") + e.what());
  }
  if (!doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    throw Error(Errc::UnsupportedGeometry, "expected a FeatureCollection");
  }
  std::vector<Boundary> out;
  const auto& features = doc["features"];
  for (std::size_t i = 0; i < features.size(); ++i) {
    const auto& f = features[i];
    const json props = f.contains("properties") && f["properties"].is_object() ? f["properties"]
                                                                               : json::object();
    const std::string key(zip_property);
    const std::string zip = props.contains(key) ? zip_value(props[key]) : std::string{};
    if (zip.empty()) throw Error(Errc::MissingZipProperty, "feature " + std::to_string(i));

    const json geom = f.contains("geometry") ? f["geometry"] : json();
    const std::string type = geom.is_object() ? geom.value("type", "") : "";
    if (!geom.is_object() || !geom.contains("coordinates")) {
      throw Error(Errc::UnsupportedGeometry, type.empty() ? "null" : type);
    }
    std::vector<Polygon> parts;
    if (type == "Polygon") {
      parts.push_back(parse_polygon(geom["coordinates"], i));
    } else if (type == "MultiPolygon") {
      for (const auto& poly : geom["coordinates"]) parts.push_back(parse_polygon(poly, i));
      if (parts.empty()) throw Error(Errc::UnclosedRing, "feature " + std::to_string(i));
    } else {
      throw Error(Errc::UnsupportedGeometry, type);
    }
    out.push_back(make_boundary(zip, std::move(parts)));
  }
  return out;
}

json polygon_parts_to_geojson(const Boundary& b) {
  auto polygon = [](const Polygon& p) {
    json rings = json::array();
    for (const auto& r : p.rings) rings.push_back(ring_json(r));
    return rings;
  };
  if (b.parts.size() == 1) return {{"type", "Polygon"}, {"coordinates", polygon(b.parts[0])}};
  json polys = json::array();
  for (const auto& p : b.parts) polys.push_back(polygon(p));
  return {{"type", "MultiPolygon"}, {"coordinates", polys}};
}

json boundaries_to_geojson(std::span<const Boundary> boundaries, std::string_view zip_property) {
  json features = json::array();
  for (const auto& b : boundaries) {
    features.push_back({{"type", "Feature"},
                        {"properties", {{std::string(zip_property), b.zip}}},
                        {"geometry", polygon_parts_to_geojson(b)}});
  }
  return {{"type", "FeatureCollection"}, {"features", features}};
}

}  // namespace railestate
