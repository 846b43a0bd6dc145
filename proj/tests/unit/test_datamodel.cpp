#include <doctest.h>

#include <algorithm>

#include "generators.hpp"
#include "railestate/datamodel.hpp"
#include "railestate/errors.hpp"
#include "railestate/synthetic.hpp"

using namespace railestate;

namespace {

Errc load_error(Tables t) {
  try {
    bulk_load(std::move(t));
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return Errc::Io;
}

Tables tiny() {
  Tables t;
  t.stations = {{"a", "Alpha", {38.9, -77.0}}, {"b", "Beta", {38.91, -77.01}}, {"c", "Gamma", {38.92, -77.02}}};
  t.lines = {{"OR", "Orange", "OR"}, {"SV", "Silver", "SV"}};
  t.station_paths = {{"OR", "c", 2}, {"OR", "a", 0}, {"OR", "b", 1}, {"SV", "b", 0}};
  t.boundaries = {make_boundary("22046", {Polygon{{gen::rect_ring(38.8, -77.2, 38.9, -77.1)}}})};
  t.prices = {{"22046", "Falls Church", "VA", make_month(2000, 2), 200.0},
              {"22046", "Falls Church", "VA", make_month(2000, 1), 100.0}};
  return t;
}

}  // namespace

TEST_CASE("empty store") {
  const Store s = bulk_load({});
  CHECK(s.prices().empty());
  CHECK(s.price_rows_for_zip("22046").empty());
  CHECK(s.price_rows_for_city("Falls Church").empty());
  CHECK(s.find_station("x") == nullptr);
  CHECK_FALSE(s.price_month_range());
  CHECK(series_for_zip(s, "22046").empty());
}

TEST_CASE("bulk_load rejects bad rows") {
  SUBCASE("duplicate (zip, month)") {
    auto t = tiny();
    t.prices.push_back(t.prices.front());
    CHECK(load_error(t) == Errc::DuplicateKey);
  }
  SUBCASE("duplicate station") {
    auto t = tiny();
    t.stations.push_back(t.stations.front());
    CHECK(load_error(t) == Errc::DuplicateKey);
  }
  SUBCASE("path to unknown station") {
    auto t = tiny();
    t.station_paths.push_back({"OR", "zz", 9});
    CHECK(load_error(t) == Errc::ForeignKeyViolation);
  }
  SUBCASE("path on unknown line") {
    auto t = tiny();
    t.station_paths.push_back({"XX", "a", 9});
    CHECK(load_error(t) == Errc::ForeignKeyViolation);
  }
  SUBCASE("non-positive value") {
    auto t = tiny();
    t.prices[0].value = 0.0;
    CHECK(load_error(t) == Errc::InvariantViolation);
  }
  SUBCASE("month outside coverage") {
    auto t = tiny();
    t.prices[0].month = make_month(1999, 12);
    CHECK(load_error(t) == Errc::InvariantViolation);
  }
  SUBCASE("bad horizon") {
    auto t = tiny();
    t.predictions.push_back({"22046", make_month(2000, 2), 6, 10.0});
    CHECK(load_error(t) == Errc::InvariantViolation);
  }
  SUBCASE("bad zip") {
    auto t = tiny();
    t.prices[0].zip = "2204";
    CHECK_THROWS_AS(bulk_load(t), Error);
  }
}

TEST_CASE("series are ordered by month") {
  const Store s = bulk_load(tiny());
  const Series series = series_for_zip(s, "22046");
  REQUIRE(series.size() == 2);
  CHECK(series[0] == SeriesPoint{make_month(2000, 1), 100.0});
  CHECK(series[1] == SeriesPoint{make_month(2000, 2), 200.0});
  CHECK(series_for_zip(s, "00000").empty());
  REQUIRE(s.price_at("22046", make_month(2000, 2)));
  CHECK(s.price_at("22046", make_month(2000, 2))->value == 200.0);
  CHECK(s.price_at("22046", make_month(2000, 3)) == nullptr);
}

TEST_CASE("line topology") {
  const Store s = bulk_load(tiny());
  const auto or_line = stations_for_line(s, "OR");
  REQUIRE(or_line.size() == 3);
  CHECK(or_line[0].station_id == "a");
  CHECK(or_line[1].station_id == "b");
  CHECK(or_line[2].station_id == "c");
  CHECK_THROWS_WITH_AS(stations_for_line(s, "XX"), doctest::Contains("XX"), Error);

  // Shared station appears on both lines.
  const auto lines = lines_for_station(s, "b");
  REQUIRE(lines.size() == 2);
  CHECK(lines[0].line_id == "OR");
  CHECK(lines[1].line_id == "SV");
  CHECK(lines_for_station(s, "c").size() == 1);
}

TEST_CASE("indexes equal full scans on 300k rows") {
  const Store s = bulk_load(make_synthetic_tables());
  CHECK(s.prices().size() == 300'000);
  for (const std::string city : {"City 00", "City 17", "City 39", "Nowhere"}) {
    std::vector<std::size_t> scan;
    for (std::size_t i = 0; i < s.prices().size(); ++i)
      if (s.prices()[i].city == city) scan.push_back(i);
    const auto idx = s.price_rows_for_city(city);
    CHECK(std::vector<std::size_t>(idx.begin(), idx.end()) == scan);
  }
  // Series equals filter-and-sort of raw rows.
  const std::string zip = s.prices()[12345].zip;
  Series expect;
  for (const auto& r : s.tables().prices)
    if (r.zip == zip) expect.emplace_back(r.month, r.value);
  std::sort(expect.begin(), expect.end());
  CHECK(expect.size() == 300);
  CHECK(series_for_zip(s, zip) == expect);
}
