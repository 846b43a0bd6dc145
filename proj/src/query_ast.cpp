#include <array>
#include <cmath>

#include "railestate/errors.hpp"
#include "railestate/query.hpp"

namespace railestate {

namespace {

constexpr std::array<ColumnDef, 4> kStations{{{"station_id", ColumnType::Text},
                                              {"name", ColumnType::Text},
                                              {"lat", ColumnType::Number},
                                              {"lon", ColumnType::Number}}};
constexpr std::array<ColumnDef, 3> kLines{{{"line_id", ColumnType::Text},
                                           {"name", ColumnType::Text},
                                           {"color_tag", ColumnType::Text}}};
constexpr std::array<ColumnDef, 3> kStationPath{{{"line_id", ColumnType::Text},
                                                 {"station_id", ColumnType::Text},
                                                 {"sequence", ColumnType::Number}}};
constexpr std::array<ColumnDef, 3> kBoundary{{{"zip", ColumnType::Text},
                                              {"centroid_lat", ColumnType::Number},
                                              {"centroid_lon", ColumnType::Number}}};
constexpr std::array<ColumnDef, 5> kPrices{{{"zip", ColumnType::Text},
                                            {"city", ColumnType::Text},
                                            {"state", ColumnType::Text},
                                            {"date", ColumnType::Date},
                                            {"value", ColumnType::Number}}};
constexpr std::array<ColumnDef, 4> kPredictions{{{"zip", ColumnType::Text},
                                                 {"base_month", ColumnType::Date},
                                                 {"horizon_months", ColumnType::Number},
                                                 {"predicted_value", ColumnType::Number}}};

bool spatially_keyed(Table t) { return t != Table::Lines; }

void require_column(Table t, const std::string& column) {
  if (!column_type(t, column)) {
    throw Error(Errc::UnknownColumn, std::string(table_name(t)) + "." + column);
  }
}

void require_radius(double meters) {
  if (!std::isfinite(meters) || meters < 0.0) {
    throw Error(Errc::InvalidQuery, "radius must be a non-negative number of meters");
  }
}

}  // namespace

std::string_view table_name(Table t) {
  switch (t) {
    case Table::Stations: return "Stations";
    case Table::Lines: return "Lines";
    case Table::StationPath: return "Station_Path";
    case Table::Boundary: return "Boundary";
    case Table::LocationsPrices: return "Locations_Prices";
    case Table::Predictions: return "Predictions";
  }
  return "";
}

std::optional<Table> table_from_name(std::string_view name) {
  for (Table t : kAllTables) {
    if (table_name(t) == name) return t;
  }
  return std::nullopt;
}

std::span<const ColumnDef> columns_of(Table t) {
  switch (t) {
    case Table::Stations: return kStations;
    case Table::Lines: return kLines;
    case Table::StationPath: return kStationPath;
    case Table::Boundary: return kBoundary;
    case Table::LocationsPrices: return kPrices;
    case Table::Predictions: return kPredictions;
  }
  return {};
}

std::optional<ColumnType> column_type(Table t, std::string_view column) {
  for (const auto& c : columns_of(t)) {
    if (c.name == column) return c.type;
  }
  return std::nullopt;
}

std::string_view to_string(AggregateFn fn) {
  switch (fn) {
    case AggregateFn::Max: return "MAX";
    case AggregateFn::Min: return "MIN";
    case AggregateFn::Avg: return "AVG";
    case AggregateFn::Count: return "COUNT";
  }
  return "";
}

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s.front())) return false;
  for (char c : s) {
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  }
  return true;
}

void validate(const QueryAst& ast) {
  const Table t = ast.table;
  if (const auto* agg = std::get_if<Aggregate>(&ast.target)) {
    if (agg->column == "*") {
      if (agg->fn != AggregateFn::Count) {
        throw Error(Errc::InvalidQuery, std::string(to_string(agg->fn)) + "(*) is not allowed");
      }
    } else {
      require_column(t, agg->column);
      if (agg->fn != AggregateFn::Count && column_type(t, agg->column) != ColumnType::Number) {
        throw Error(Errc::InvalidQuery, "aggregate column " + agg->column + " is not numeric");
      }
    }
    if (ast.result_alias && !is_identifier(*ast.result_alias)) {
      throw Error(Errc::InvalidQuery, "alias must be an identifier");
    }
  } else {
    const auto& proj = std::get<Projection>(ast.target);
    if (proj.columns.empty()) throw Error(Errc::InvalidQuery, "empty projection");
    for (const auto& c : proj.columns) require_column(t, c);
    if (ast.result_alias) throw Error(Errc::InvalidQuery, "alias only applies to aggregates");
  }

  for (const auto& pred : ast.predicates) {
    std::visit(
        [&](const auto& p) {
          using P = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<P, AttrEquals>) {
            require_column(t, p.column);
            const ColumnType type = *column_type(t, p.column);
            const bool is_text = std::holds_alternative<std::string>(p.value);
            if (type == ColumnType::Number && is_text) {
              throw Error(Errc::InvalidQuery, p.column + " compares to a number");
            }
            if (type != ColumnType::Number && !is_text) {
              throw Error(Errc::InvalidQuery, p.column + " compares to a string");
            }
            if (type == ColumnType::Date && !parse_date(std::get<std::string>(p.value))) {
              throw Error(Errc::InvalidQuery, p.column + " needs a YYYY-MM-DD literal");
            }
            if (!is_text && !std::isfinite(std::get<double>(p.value))) {
              throw Error(Errc::InvalidQuery, "non-finite literal");
            }
          } else if constexpr (std::is_same_v<P, DateBetween>) {
            require_column(t, p.column);
            if (column_type(t, p.column) != ColumnType::Date) {
              throw Error(Errc::InvalidQuery, p.column + " is not a date column");
            }
            if (!p.start.ok() || !p.end.ok() || p.end < p.start) {
              throw Error(Errc::InvalidQuery, "BETWEEN range must satisfy start <= end");
            }
          } else {
            if (!spatially_keyed(t)) {
              throw Error(Errc::InvalidQuery,
                          std::string(table_name(t)) + " has no spatial key");
            }
            if constexpr (!std::is_same_v<P, WithinZip>) require_radius(p.meters);
          }
        },
        pred);
  }
}

nlohmann::ordered_json to_json(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::ordered_json {
        using V = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<V, Date>) {
          return format_date(x);
        } else {
          return x;
        }
      },
      v);
}

nlohmann::ordered_json to_json(const ResultSet& rs) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : rs.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::array();
    for (const auto& v : row) r.push_back(to_json(v));
    rows.push_back(std::move(r));
  }
  return {{"columns", rs.columns}, {"rows", rows}};
}

}  // namespace railestate
