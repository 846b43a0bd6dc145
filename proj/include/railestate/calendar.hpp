#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace railestate {

using Month = std::chrono::year_month;
using Date = std::chrono::year_month_day;

/// Parses `YYYY-MM` or `YYYY-MM-DD`. Any day of month is accepted and
/// dropped, so month-end and month-start labels normalize to the same month.
std::optional<Month> parse_month(std::string_view text);

/// Parses strictly `YYYY-MM-DD` with a valid calendar day.
std::optional<Date> parse_date(std::string_view text);

std::string format_month(Month m);  // "2000-01"
std::string format_date(Date d);    // "2000-01-01"

/// "January 2000"
std::string month_display_name(Month m);

std::optional<unsigned> month_from_name(std::string_view lowercase_name);

inline Date first_day(Month m) { return Date{m.year(), m.month(), std::chrono::day{1}}; }

inline Date last_day(Month m) {
  return Date{std::chrono::year_month_day_last{m.year(), std::chrono::month_day_last{m.month()}}};
}

inline Month month_of(Date d) { return Month{d.year(), d.month()}; }

inline Month make_month(int year, unsigned month) {
  return Month{std::chrono::year{year}, std::chrono::month{month}};
}

inline int year_of(Month m) { return static_cast<int>(m.year()); }

/// Whole months from `a` to `b` (negative when b precedes a).
inline int months_between(Month a, Month b) {
  return static_cast<int>((b - a).count());
}

}  // namespace railestate
