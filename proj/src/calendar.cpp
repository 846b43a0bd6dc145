#include "railestate/calendar.hpp"

#include <array>
#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "railestate/errors.hpp"

namespace railestate {

namespace {

constexpr std::array<std::string_view, 12> kMonthNames = {
    "January", "February", "March",     "April",   "May",      "June",
    "July",    "August",   "September", "October", "November", "December"};

bool parse_fixed_int(std::string_view text, int& out) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateKey: return "DuplicateKey";
    case Errc::ForeignKeyViolation: return "ForeignKeyViolation";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::UnknownLine: return "UnknownLine";
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::UnparsableDate: return "UnparsableDate";
    case Errc::UnparsableNumber: return "UnparsableNumber";
    case Errc::MissingColumn: return "MissingColumn";
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::MissingZipProperty: return "MissingZipProperty";
    case Errc::UnclosedRing: return "UnclosedRing";
    case Errc::UnsupportedGeometry: return "UnsupportedGeometry";
    case Errc::DegenerateGeometry: return "DegenerateGeometry";
    case Errc::InsufficientData: return "InsufficientData";
    case Errc::HorizonExceedsDeltas: return "HorizonExceedsDeltas";
    case Errc::UnknownTable: return "UnknownTable";
    case Errc::UnknownColumn: return "UnknownColumn";
    case Errc::UnknownStation: return "UnknownStation";
    case Errc::InvalidQuery: return "InvalidQuery";
    case Errc::UnsupportedSyntax: return "UnsupportedSyntax";
    case Errc::UnsafeSql: return "UnsafeSql";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(UnsafeReason reason) {
  switch (reason) {
    case UnsafeReason::MultipleStatements: return "MultipleStatements";
    case UnsafeReason::Comment: return "Comment";
    case UnsafeReason::NonSelect: return "NonSelect";
    case UnsafeReason::ParseFailure: return "ParseFailure";
  }
  return "Unknown";
}

std::optional<Month> parse_month(std::string_view text) {
  if (text.size() != 7 && text.size() != 10) return std::nullopt;
  if (text[4] != '-') return std::nullopt;
  int y = 0, m = 0;
  if (!parse_fixed_int(text.substr(0, 4), y) || !parse_fixed_int(text.substr(5, 2), m)) {
    return std::nullopt;
  }
  if (m < 1 || m > 12) return std::nullopt;
  if (text.size() == 10) {
    int d = 0;
    if (text[7] != '-' || !parse_fixed_int(text.substr(8, 2), d)) return std::nullopt;
    Date full{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
              std::chrono::day{static_cast<unsigned>(d)}};
    if (!full.ok()) return std::nullopt;
  }
  return make_month(y, static_cast<unsigned>(m));
}

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0, m = 0, d = 0;
  if (!parse_fixed_int(text.substr(0, 4), y) || !parse_fixed_int(text.substr(5, 2), m) ||
      !parse_fixed_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date out{std::chrono::year{y}, std::chrono::month{static_cast<unsigned>(m)},
           std::chrono::day{static_cast<unsigned>(d)}};
  if (!out.ok()) return std::nullopt;
  return out;
}

std::string format_month(Month m) {
  return fmt::format("{:04d}-{:02d}", static_cast<int>(m.year()), static_cast<unsigned>(m.month()));
}

std::string format_date(Date d) {
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                     static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

std::string month_display_name(Month m) {
  return fmt::format("{} {}", kMonthNames[static_cast<unsigned>(m.month()) - 1],
                     static_cast<int>(m.year()));
}

std::optional<unsigned> month_from_name(std::string_view name) {
  for (unsigned i = 0; i < kMonthNames.size(); ++i) {
    std::string full(kMonthNames[i]);
    for (auto& c : full) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (name == full || (name.size() == 3 && full.starts_with(name))) return i + 1;
  }
  return std::nullopt;
}

}  // namespace railestate
