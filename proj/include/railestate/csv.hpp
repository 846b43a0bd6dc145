#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace railestate::csv {

using Row = std::vector<std::string>;

/// Splits RFC-4180 text into rows. Quoted fields may contain commas,
/// doubled quotes and line breaks; both LF and CRLF terminate records.
/// A leading UTF-8 byte-order mark is skipped. Blank lines are dropped.
std::vector<Row> parse(std::string_view text);

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);

std::string join(const Row& row);

/// Column lookup by exact header name.
std::optional<std::size_t> find_column(const Row& header, std::string_view name);

}  // namespace railestate::csv
