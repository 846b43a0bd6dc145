#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "railestate/errors.hpp"
#include "railestate/query.hpp"

namespace railestate {

namespace {

bool zip_keyed(Table t) {
  return t == Table::Boundary || t == Table::LocationsPrices || t == Table::Predictions;
}

std::size_t row_count(const Store& s, Table t) {
  switch (t) {
    case Table::Stations: return s.stations().size();
    case Table::Lines: return s.lines().size();
    case Table::StationPath: return s.station_paths().size();
    case Table::Boundary: return s.boundaries().size();
    case Table::LocationsPrices: return s.prices().size();
    case Table::Predictions: return s.predictions().size();
  }
  return 0;
}

Value cell(const Store& s, Table t, std::size_t row, std::string_view col) {
  switch (t) {
    case Table::Stations: {
      const auto& r = s.stations()[row];
      if (col == "station_id") return r.station_id;
      if (col == "name") return r.name;
      if (col == "lat") return r.location.lat;
      if (col == "lon") return r.location.lon;
      break;
    }
    case Table::Lines: {
      const auto& r = s.lines()[row];
      if (col == "line_id") return r.line_id;
      if (col == "name") return r.name;
      if (col == "color_tag") return r.color_tag;
      break;
    }
    case Table::StationPath: {
      const auto& r = s.station_paths()[row];
      if (col == "line_id") return r.line_id;
      if (col == "station_id") return r.station_id;
      if (col == "sequence") return static_cast<double>(r.sequence);
      break;
    }
    case Table::Boundary: {
      const auto& r = s.boundaries()[row];
      if (col == "zip") return r.zip;
      if (col == "centroid_lat") return r.centroid.lat;
      if (col == "centroid_lon") return r.centroid.lon;
      break;
    }
    case Table::LocationsPrices: {
      const auto& r = s.prices()[row];
      if (col == "zip") return r.zip;
      if (col == "city") return r.city;
      if (col == "state") return r.state;
      if (col == "date") return first_day(r.month);
      if (col == "value") return r.value;
      break;
    }
    case Table::Predictions: {
      const auto& r = s.predictions()[row];
      if (col == "zip") return r.zip;
      if (col == "base_month") return first_day(r.base_month);
      if (col == "horizon_months") return static_cast<double>(r.horizon_months);
      if (col == "predicted_value") return r.predicted_value;
      break;
    }
  }
  throw Error(Errc::UnknownColumn, std::string(col));
}

const std::string& zip_of(const Store& s, Table t, std::size_t row) {
  switch (t) {
    case Table::Boundary: return s.boundaries()[row].zip;
    case Table::LocationsPrices: return s.prices()[row].zip;
    default: return s.predictions()[row].zip;
  }
}

const std::string& station_of(const Store& s, Table t, std::size_t row) {
  return t == Table::Stations ? s.stations()[row].station_id : s.station_paths()[row].station_id;
}

/// A spatial predicate resolved to the set of keys (ZIPs or station ids) it admits.
using KeySet = std::unordered_set<std::string>;

}  // namespace

ResultSet Executor::execute(const QueryAst& ast) const {
  validate(ast);
  const Table t = ast.table;
  const bool by_zip = zip_keyed(t);

  auto radius_keys = [&](const GeoPoint& center, double meters) {
    KeySet keys;
    if (by_zip) {
      auto hits = options_.use_indexes ? index_.zips_within_radius(center, meters)
                                       : index_.scan_zips_within_radius(center, meters);
      for (auto& h : hits) keys.insert(std::move(h.zip));
    } else {
      auto hits = options_.use_indexes ? index_.stations_within_radius(center, meters)
                                       : index_.scan_stations_within_radius(center, meters);
      for (auto& h : hits) keys.insert(std::move(h.station.station_id));
    }
    return keys;
  };

  // Resolve spatial predicates up front; attribute predicates are checked per row.
  std::vector<std::optional<KeySet>> spatial(ast.predicates.size());
  for (std::size_t i = 0; i < ast.predicates.size(); ++i) {
    const auto& pred = ast.predicates[i];
    if (const auto* p = std::get_if<WithinRadiusOfStation>(&pred)) {
      const Station* s = store_.find_station(p->station_id);
      if (!s) throw Error(Errc::UnknownStation, p->station_id);
      spatial[i] = radius_keys(s->location, p->meters);
    } else if (const auto* p = std::get_if<WithinRadiusOfZip>(&pred)) {
      const Boundary* b = store_.find_boundary(p->zip);
      spatial[i] = b ? radius_keys(b->centroid, p->meters) : KeySet{};
    } else if (const auto* p = std::get_if<WithinZip>(&pred)) {
      KeySet keys;
      if (by_zip) {
        keys.insert(p->zip);
      } else {
        for (const auto& s : store_.stations()) {
          auto z = options_.use_indexes ? index_.enclosing_zip(s.location)
                                        : index_.scan_enclosing_zip(s.location);
          if (z == p->zip) keys.insert(s.station_id);
        }
      }
      spatial[i] = std::move(keys);
    }
  }

  auto matches = [&](std::size_t row) {
    for (std::size_t i = 0; i < ast.predicates.size(); ++i) {
      const auto& pred = ast.predicates[i];
      if (spatial[i]) {
        const std::string& key = by_zip ? zip_of(store_, t, row) : station_of(store_, t, row);
        if (!spatial[i]->contains(key)) return false;
      } else if (const auto* p = std::get_if<AttrEquals>(&pred)) {
        const Value v = cell(store_, t, row, p->column);
        if (const auto* s = std::get_if<std::string>(&p->value)) {
          if (const auto* d = std::get_if<Date>(&v)) {
            if (format_date(*d) != *s) return false;
          } else if (std::get<std::string>(v) != *s) {
            return false;
          }
        } else if (std::get<double>(v) != std::get<double>(p->value)) {
          return false;
        }
      } else if (const auto* p = std::get_if<DateBetween>(&pred)) {
        const Date d = std::get<Date>(cell(store_, t, row, p->column));
        if (d < p->start || d > p->end) return false;
      }
    }
    return true;
  };

  // Candidate rows: narrowest attribute index when allowed, else a full scan.
  std::vector<std::size_t> candidates;
  bool narrowed = false;
  if (options_.use_indexes && (t == Table::LocationsPrices || t == Table::Predictions)) {
    std::optional<std::span<const std::size_t>> best;
    for (const auto& pred : ast.predicates) {
      const auto* p = std::get_if<AttrEquals>(&pred);
      if (!p || !std::holds_alternative<std::string>(p->value)) continue;
      const auto& key = std::get<std::string>(p->value);
      std::optional<std::span<const std::size_t>> rows;
      if (p->column == "zip") {
        rows = t == Table::LocationsPrices ? store_.price_rows_for_zip(key)
                                           : store_.prediction_rows_for_zip(key);
      } else if (p->column == "city" && t == Table::LocationsPrices) {
        rows = store_.price_rows_for_city(key);
      }
      if (rows && (!best || rows->size() < best->size())) best = rows;
    }
    if (best) {
      candidates.assign(best->begin(), best->end());
      narrowed = true;
    }
    // A resolved ZIP set may be narrower still: union its per-ZIP slices.
    for (const auto& keys : spatial) {
      if (!keys) continue;
      std::size_t total = 0;
      for (const auto& zip : *keys) {
        total += t == Table::LocationsPrices ? store_.price_rows_for_zip(zip).size()
                                             : store_.prediction_rows_for_zip(zip).size();
      }
      if (narrowed && total >= candidates.size()) continue;
      candidates.clear();
      for (const auto& zip : *keys) {
        auto rows = t == Table::LocationsPrices ? store_.price_rows_for_zip(zip)
                                                : store_.prediction_rows_for_zip(zip);
        candidates.insert(candidates.end(), rows.begin(), rows.end());
      }
      std::sort(candidates.begin(), candidates.end());
      narrowed = true;
    }
  }
  if (!narrowed) {
    candidates.resize(row_count(store_, t));
    for (std::size_t i = 0; i < candidates.size(); ++i) candidates[i] = i;
  }

  ResultSet out;
  if (const auto* agg = std::get_if<Aggregate>(&ast.target)) {
    out.columns.push_back(ast.result_alias.value_or(
        [&] {
          std::string name(to_string(agg->fn));
          std::transform(name.begin(), name.end(), name.begin(),
                         [](char c) { return static_cast<char>(std::tolower(c)); });
          return name;
        }()));
    std::size_t count = 0;
    double sum = 0.0, lo = 0.0, hi = 0.0;
    for (std::size_t row : candidates) {
      if (!matches(row)) continue;
      if (agg->column != "*" && agg->fn != AggregateFn::Count) {
        const double v = std::get<double>(cell(store_, t, row, agg->column));
        if (count == 0) {
          lo = hi = v;
        } else {
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        sum += v;
      }
      ++count;
    }
    Value result;
    switch (agg->fn) {
      case AggregateFn::Count: result = static_cast<double>(count); break;
      case AggregateFn::Max: if (count) result = hi; break;
      case AggregateFn::Min: if (count) result = lo; break;
      case AggregateFn::Avg: if (count) result = sum / static_cast<double>(count); break;
    }
    out.rows.push_back({std::move(result)});
    return out;
  }

  const auto& cols = std::get<Projection>(ast.target).columns;
  out.columns = cols;
  for (std::size_t row : candidates) {
    if (!matches(row)) continue;
    std::vector<Value> r;
    r.reserve(cols.size());
    for (const auto& c : cols) r.push_back(cell(store_, t, row, c));
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace railestate
