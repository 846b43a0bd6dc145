#include "railestate/datamodel.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>
#include <unordered_set>

#include "railestate/errors.hpp"

namespace railestate {

namespace {

[[noreturn]] void duplicate(std::string_view table, const std::string& key) {
  throw Error(Errc::DuplicateKey, std::string(table) + " key " + key);
}

[[noreturn]] void dangling(std::string_view table, const std::string& key) {
  throw Error(Errc::ForeignKeyViolation, std::string(table) + " references " + key);
}

[[noreturn]] void invalid(std::string_view table, const std::string& row, std::string_view reason) {
  throw Error(Errc::InvariantViolation,
              std::string(table) + " row " + row + ": " + std::string(reason));
}

void validate_boundary(const Boundary& b) {
  if (!is_zip_code(b.zip)) invalid("Boundary", b.zip, "zip must be 5 digits");
  if (b.parts.empty()) invalid("Boundary", b.zip, "no polygon parts");
  for (const auto& part : b.parts) {
    if (part.rings.empty()) invalid("Boundary", b.zip, "empty exterior ring");
    for (const auto& ring : part.rings) {
      if (ring.size() < 4) invalid("Boundary", b.zip, "ring with fewer than 4 points");
      if (ring.front() != ring.back()) invalid("Boundary", b.zip, "ring not closed");
      for (const auto& p : ring) {
        if (!is_valid(p)) invalid("Boundary", b.zip, "vertex out of range");
        if (!b.bbox.contains(p)) invalid("Boundary", b.zip, "bbox does not contain vertex");
      }
    }
  }
}

bool is_state_code(const std::string& s) {
  return s.size() == 2 && std::isalpha(static_cast<unsigned char>(s[0])) &&
         std::isalpha(static_cast<unsigned char>(s[1]));
}

}  // namespace

bool is_zip_code(std::string_view text) {
  return text.size() == 5 &&
         std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::span<const std::size_t> Store::lookup(const RowIndex& index, const std::string& key) {
  auto it = index.find(key);
  if (it == index.end()) return {};
  return it->second;
}

std::span<const std::size_t> Store::price_rows_for_zip(const std::string& zip) const {
  return lookup(by_zip_, zip);
}

std::span<const std::size_t> Store::price_rows_for_city(const std::string& city) const {
  return lookup(by_city_, city);
}

std::span<const std::size_t> Store::path_rows_for_line(const std::string& line_id) const {
  return lookup(paths_by_line_, line_id);
}

std::span<const std::size_t> Store::prediction_rows_for_zip(const std::string& zip) const {
  return lookup(predictions_by_zip_, zip);
}

const PriceRecord* Store::price_at(const std::string& zip, Month month) const {
  auto it = by_zip_month_.find({zip, month});
  return it == by_zip_month_.end() ? nullptr : &tables_.prices[it->second];
}

const Station* Store::find_station(const std::string& station_id) const {
  auto it = station_pos_.find(station_id);
  return it == station_pos_.end() ? nullptr : &tables_.stations[it->second];
}

const Line* Store::find_line(const std::string& line_id) const {
  auto it = line_pos_.find(line_id);
  return it == line_pos_.end() ? nullptr : &tables_.lines[it->second];
}

const Boundary* Store::find_boundary(const std::string& zip) const {
  auto it = boundary_pos_.find(zip);
  return it == boundary_pos_.end() ? nullptr : &tables_.boundaries[it->second];
}

std::vector<std::string> Store::cities() const {
  std::vector<std::string> out;
  out.reserve(by_city_.size());
  for (const auto& [city, rows] : by_city_) out.push_back(city);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> Store::zips() const {
  std::set<std::string> all;
  for (const auto& [zip, rows] : by_zip_) all.insert(zip);
  for (const auto& b : tables_.boundaries) all.insert(b.zip);
  return {all.begin(), all.end()};
}

std::vector<std::string> Store::states() const {
  std::set<std::string> all;
  for (const auto& r : tables_.prices) all.insert(r.state);
  return {all.begin(), all.end()};
}

std::optional<std::pair<Month, Month>> Store::price_month_range() const {
  if (tables_.prices.empty()) return std::nullopt;
  Month lo = tables_.prices.front().month, hi = lo;
  for (const auto& r : tables_.prices) {
    lo = std::min(lo, r.month);
    hi = std::max(hi, r.month);
  }
  return std::make_pair(lo, hi);
}

Store bulk_load(Tables tables, const LoadOptions& options) {
  Store store;
  store.coverage_ = options.coverage;

  for (std::size_t i = 0; i < tables.stations.size(); ++i) {
    const auto& s = tables.stations[i];
    if (!is_valid(s.location)) invalid("Stations", s.station_id, "coordinates out of range");
    if (!store.station_pos_.emplace(s.station_id, i).second) duplicate("Stations", s.station_id);
  }
  for (std::size_t i = 0; i < tables.lines.size(); ++i) {
    if (!store.line_pos_.emplace(tables.lines[i].line_id, i).second) {
      duplicate("Lines", tables.lines[i].line_id);
    }
  }

  std::set<std::pair<std::string, int>> path_keys;
  for (const auto& p : tables.station_paths) {
    if (p.sequence < 0) invalid("Station_Path", p.line_id, "negative sequence");
    if (!store.line_pos_.contains(p.line_id)) dangling("Station_Path", p.line_id);
    if (!store.station_pos_.contains(p.station_id)) dangling("Station_Path", p.station_id);
    if (!path_keys.emplace(p.line_id, p.sequence).second) {
      duplicate("Station_Path", p.line_id + "#" + std::to_string(p.sequence));
    }
  }

  for (std::size_t i = 0; i < tables.boundaries.size(); ++i) {
    validate_boundary(tables.boundaries[i]);
    if (!store.boundary_pos_.emplace(tables.boundaries[i].zip, i).second) {
      duplicate("Boundary", tables.boundaries[i].zip);
    }
  }

  for (const auto& r : tables.prices) {
    const std::string key = r.zip + "@" + format_month(r.month);
    if (!is_zip_code(r.zip)) invalid("Locations_Prices", key, "zip must be 5 digits");
    if (!is_state_code(r.state)) invalid("Locations_Prices", key, "state must be 2 letters");
    if (!r.month.ok()) invalid("Locations_Prices", key, "invalid month");
    if (!(r.value > 0.0) || !std::isfinite(r.value)) {
      invalid("Locations_Prices", key, "value must be positive");
    }
    if (!options.coverage.contains(r.month)) {
      invalid("Locations_Prices", key, "month outside coverage window");
    }
  }
  std::stable_sort(tables.prices.begin(), tables.prices.end(), [](const auto& a, const auto& b) {
    return std::tie(a.zip, a.month) < std::tie(b.zip, b.month);
  });
  for (std::size_t i = 0; i < tables.prices.size(); ++i) {
    const auto& r = tables.prices[i];
    if (!store.by_zip_month_.emplace(std::make_pair(r.zip, r.month), i).second) {
      duplicate("Locations_Prices", r.zip + "@" + format_month(r.month));
    }
    store.by_zip_[r.zip].push_back(i);
    store.by_city_[r.city].push_back(i);
  }

  std::set<std::tuple<std::string, Month, int>> prediction_keys;
  for (std::size_t i = 0; i < tables.predictions.size(); ++i) {
    const auto& p = tables.predictions[i];
    const std::string key = p.zip + "@" + format_month(p.base_month) + "+" +
                            std::to_string(p.horizon_months);
    if (p.horizon_months != 1 && p.horizon_months != 3 && p.horizon_months != 12) {
      invalid("Predictions", key, "horizon must be 1, 3 or 12");
    }
    if (!(p.predicted_value > 0.0) || !std::isfinite(p.predicted_value)) {
      invalid("Predictions", key, "predicted value must be positive");
    }
    if (!prediction_keys.emplace(p.zip, p.base_month, p.horizon_months).second) {
      duplicate("Predictions", key);
    }
    store.predictions_by_zip_[p.zip].push_back(i);
  }

  for (std::size_t i = 0; i < tables.station_paths.size(); ++i) {
    store.paths_by_line_[tables.station_paths[i].line_id].push_back(i);
  }

  store.tables_ = std::move(tables);
  return store;
}

Series series_for_zip(const Store& store, const std::string& zip) {
  Series out;
  for (std::size_t row : store.price_rows_for_zip(zip)) {
    const auto& r = store.prices()[row];
    out.emplace_back(r.month, r.value);
  }
  return out;
}

std::vector<Station> stations_for_line(const Store& store, const std::string& line_id) {
  if (!store.find_line(line_id)) throw Error(Errc::UnknownLine, line_id);
  std::vector<const StationPath*> path;
  for (std::size_t row : store.path_rows_for_line(line_id)) {
    path.push_back(&store.station_paths()[row]);
  }
  std::sort(path.begin(), path.end(),
            [](const auto* a, const auto* b) { return a->sequence < b->sequence; });
  std::vector<Station> out;
  out.reserve(path.size());
  for (const auto* p : path) out.push_back(*store.find_station(p->station_id));
  return out;
}

std::vector<Line> lines_for_station(const Store& store, const std::string& station_id) {
  std::set<std::string> ids;
  for (const auto& p : store.station_paths()) {
    if (p.station_id == station_id) ids.insert(p.line_id);
  }
  std::vector<Line> out;
  for (const auto& id : ids) out.push_back(*store.find_line(id));
  return out;
}

}  // namespace railestate
