#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "railestate/calendar.hpp"
#include "railestate/datamodel.hpp"
#include "railestate/spatial_index.hpp"

namespace railestate {

// ---------------------------------------------------------------------------
// Schema

enum class Table { Stations, Lines, StationPath, Boundary, LocationsPrices, Predictions };

enum class ColumnType { Text, Number, Date };

struct ColumnDef {
  std::string_view name;
  ColumnType type;
};

std::string_view table_name(Table t);
std::optional<Table> table_from_name(std::string_view name);
std::span<const ColumnDef> columns_of(Table t);
std::optional<ColumnType> column_type(Table t, std::string_view column);

inline constexpr std::array<Table, 6> kAllTables{Table::Stations,    Table::Lines,
                                                 Table::StationPath, Table::Boundary,
                                                 Table::LocationsPrices, Table::Predictions};

// ---------------------------------------------------------------------------
// AST

enum class AggregateFn { Max, Min, Avg, Count };

std::string_view to_string(AggregateFn fn);

struct Aggregate {
  AggregateFn fn = AggregateFn::Count;
  std::string column = "*";

  friend bool operator==(const Aggregate&, const Aggregate&) = default;
};

struct Projection {
  std::vector<std::string> columns;

  friend bool operator==(const Projection&, const Projection&) = default;
};

using Literal = std::variant<std::string, double>;

struct AttrEquals {
  std::string column;
  Literal value;

  friend bool operator==(const AttrEquals&, const AttrEquals&) = default;
};

struct DateBetween {
  std::string column;
  Date start;
  Date end;

  friend bool operator==(const DateBetween&, const DateBetween&) = default;
};

/// Zip-keyed tables keep rows whose ZIP centroid lies within the radius;
/// station-keyed tables keep stations within the radius.
struct WithinRadiusOfStation {
  std::string station_id;
  double meters = 0.0;

  friend bool operator==(const WithinRadiusOfStation&, const WithinRadiusOfStation&) = default;
};

/// Same as WithinRadiusOfStation with the ZIP's centroid as reference point.
struct WithinRadiusOfZip {
  std::string zip;
  double meters = 0.0;

  friend bool operator==(const WithinRadiusOfZip&, const WithinRadiusOfZip&) = default;
};

/// Zip-keyed tables: zip equality. Station-keyed tables: the station's
/// enclosing ZIP.
struct WithinZip {
  std::string zip;

  friend bool operator==(const WithinZip&, const WithinZip&) = default;
};

using Predicate =
    std::variant<AttrEquals, DateBetween, WithinRadiusOfStation, WithinRadiusOfZip, WithinZip>;

struct QueryAst {
  std::variant<Aggregate, Projection> target;
  Table table = Table::LocationsPrices;
  std::vector<Predicate> predicates;
  std::optional<std::string> result_alias;

  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

/// Throws Error(UnknownColumn) or Error(InvalidQuery).
void validate(const QueryAst& ast);

bool is_identifier(std::string_view s);

// ---------------------------------------------------------------------------
// Results

using Value = std::variant<std::monostate, std::string, double, Date>;

struct ResultSet {
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;

  friend bool operator==(const ResultSet&, const ResultSet&) = default;
};

nlohmann::ordered_json to_json(const Value& v);
nlohmann::ordered_json to_json(const ResultSet& rs);

// ---------------------------------------------------------------------------
// SQL text

/// Canonical single-line SELECT terminated by ';'.
std::string render_sql(const QueryAst& ast);

/// Inverse of render_sql; also tolerates extra whitespace, keyword case and
/// bare identifiers. Throws SyntaxError, or Error(UnknownTable / UnknownColumn
/// / InvalidQuery) for well-formed but invalid statements.
QueryAst parse_sql(std::string_view sql);

/// Allowlist sanitizer: returns the single statement with any trailing
/// semicolon and whitespace removed. Throws UnsafeSqlError.
std::string clean_sql(std::string_view sql);

// ---------------------------------------------------------------------------
// Execution

struct ExecOptions {
  /// When false, every query scans full tables and linear spatial lists.
  bool use_indexes = true;
};

/// Read-only executor over an immutable store and its spatial index.
class Executor {
 public:
  Executor(const Store& store, const SpatialIndex& index, ExecOptions options = {})
      : store_(store), index_(index), options_(options) {}

  /// Throws Error(UnknownColumn / UnknownStation / InvalidQuery).
  ResultSet execute(const QueryAst& ast) const;

 private:
  const Store& store_;
  const SpatialIndex& index_;
  ExecOptions options_;
};

inline ResultSet execute(const QueryAst& ast, const Store& store, const SpatialIndex& index) {
  return Executor(store, index).execute(ast);
}

}  // namespace railestate
