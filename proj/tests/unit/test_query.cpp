#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "railestate/errors.hpp"
#include "railestate/query.hpp"

using namespace railestate;

namespace {

const char* kCaseSql =
    R"(SELECT MAX("value") AS highest_price FROM "Locations_Prices" WHERE "city" = 'Falls Church' AND "date" BETWEEN '2000-01-01' AND '2000-12-31';)";

QueryAst case_ast() {
  return {Aggregate{AggregateFn::Max, "value"},
          Table::LocationsPrices,
          {AttrEquals{"city", std::string("Falls Church")},
           DateBetween{"date", *parse_date("2000-01-01"), *parse_date("2000-12-31")}},
          "highest_price"};
}

UnsafeReason unsafe_reason(std::string_view sql) {
  try {
    clean_sql(sql);
  } catch (const UnsafeSqlError& e) {
    return e.reason();
  }
  FAIL("accepted: " << sql);
  return UnsafeReason::ParseFailure;
}

void check_equal(const ResultSet& got, const oracle::Evaluated& want) {
  REQUIRE(got.columns == want.columns);
  REQUIRE(got.rows.size() == want.rows.size());
  for (std::size_t i = 0; i < got.rows.size(); ++i) {
    REQUIRE(got.rows[i].size() == want.rows[i].size());
    for (std::size_t j = 0; j < got.rows[i].size(); ++j) {
      const auto* a = std::get_if<double>(&got.rows[i][j]);
      const auto* b = std::get_if<double>(&want.rows[i][j]);
      if (a && b) {
        CHECK(*a == doctest::Approx(*b).epsilon(1e-9));
      } else {
        CHECK(got.rows[i][j] == want.rows[i][j]);
      }
    }
  }
}

}  // namespace

TEST_CASE("render") {
  CHECK(render_sql(case_ast()) == kCaseSql);
  CHECK(render_sql(QueryAst{Aggregate{}, Table::Stations, {}, std::nullopt}) == R"(SELECT COUNT(*) FROM "Stations";)");
  QueryAst q{Projection{{"zip", "value"}}, Table::LocationsPrices,
             {AttrEquals{"city", std::string("L'Enfant")}, WithinRadiusOfStation{"efc", 1600},
              WithinRadiusOfZip{"22046", 812.5}, WithinZip{"22046"}, AttrEquals{"value", 308002.64}},
             std::nullopt};
  const std::string sql = render_sql(q);
  CHECK(sql ==
        R"(SELECT "zip", "value" FROM "Locations_Prices" WHERE "city" = 'L''Enfant' AND WITHIN_RADIUS_OF_STATION('efc', 1600) AND WITHIN_RADIUS_OF_ZIP('22046', 812.5) AND WITHIN_ZIP('22046') AND "value" = 308002.64;)");
  CHECK(parse_sql(sql) == q);
}

TEST_CASE("parse") {
  CHECK(parse_sql(kCaseSql) == case_ast());
  CHECK(parse_sql("select max(value) as highest_price from Locations_Prices where city = 'Falls Church' and "
                  "date between '2000-01-01' and '2000-12-31'") == case_ast());
  CHECK_THROWS_AS(parse_sql("DROP TABLE x;"), SyntaxError);
  CHECK_THROWS_AS(parse_sql(""), SyntaxError);
  try {
    parse_sql("SELECT COUNT(*) FROM \"Stations\" WHERE");
  } catch (const SyntaxError& e) {
    CHECK(e.code() == Errc::UnsupportedSyntax);
    CHECK(e.position() > 0);
  }
  CHECK_THROWS_AS(parse_sql(R"(SELECT COUNT(*) FROM "Nope";)"), Error);
  CHECK_THROWS_AS(parse_sql(R"(SELECT "nope" FROM "Stations";)"), Error);
  CHECK_THROWS_AS(parse_sql(R"(SELECT MAX("name") FROM "Stations";)"), Error);
  CHECK_THROWS_AS(parse_sql(R"(SELECT COUNT(*) FROM "Locations_Prices" WHERE "date" BETWEEN '2001-01-01' AND '2000-01-01';)"), Error);
}

TEST_CASE("clean_sql") {
  CHECK(clean_sql(kCaseSql) == std::string(kCaseSql).substr(0, std::string(kCaseSql).size() - 1));
  CHECK(clean_sql(std::string(kCaseSql) + "  \n") == clean_sql(kCaseSql));
  CHECK(unsafe_reason(R"(SELECT 1; DROP TABLE "Stations";)") == UnsafeReason::MultipleStatements);
  CHECK(unsafe_reason(R"(SELECT MAX("value") FROM "Locations_Prices" -- comment)") == UnsafeReason::Comment);
  CHECK(unsafe_reason(R"(SELECT /* x */ COUNT(*) FROM "Stations")") == UnsafeReason::Comment);
  CHECK(unsafe_reason("DELETE FROM \"Stations\"") == UnsafeReason::NonSelect);
  CHECK(unsafe_reason("") == UnsafeReason::ParseFailure);
  CHECK(unsafe_reason("SELECT 1") == UnsafeReason::ParseFailure);
  // Quoted text is data, not syntax.
  CHECK_NOTHROW(clean_sql(R"(SELECT COUNT(*) FROM "Locations_Prices" WHERE "city" = 'a;--b/*';)"));
}

TEST_CASE("execute on the planted fixture") {
  const auto& d = fixtures::casestudy();
  const auto rs = execute(case_ast(), d.store, d.index);
  REQUIRE(rs.rows.size() == 1);
  CHECK(rs.columns == std::vector<std::string>{"highest_price"});
  CHECK(std::get<double>(rs.rows[0][0]) == 308002.64);

  QueryAst none{Aggregate{AggregateFn::Count, "*"}, Table::LocationsPrices,
                {AttrEquals{"city", std::string("Nowhere")}}, std::nullopt};
  CHECK(execute(none, d.store, d.index).rows[0][0] == Value{0.0});
  none.target = Aggregate{AggregateFn::Avg, "value"};
  CHECK(std::holds_alternative<std::monostate>(execute(none, d.store, d.index).rows[0][0]));

  QueryAst bad{Aggregate{}, Table::LocationsPrices, {WithinRadiusOfStation{"nope", 10}}, std::nullopt};
  CHECK_THROWS_AS(execute(bad, d.store, d.index), Error);
}

TEST_CASE("AVG within 1,600 m of a station equals brute force") {
  const auto& d = fixtures::casestudy();
  for (const auto& st : d.store.stations()) {
    QueryAst q{Aggregate{AggregateFn::Avg, "value"}, Table::LocationsPrices,
               {WithinRadiusOfStation{st.station_id, 1600}}, std::nullopt};
    std::set<std::string> zips;
    for (const auto& b : d.store.boundaries())
      if (oracle::distance_m(st.location, oracle::centroid(b)) <= 1600) zips.insert(b.zip);
    double sum = 0;
    std::size_t n = 0;
    for (const auto& r : d.store.prices()) {
      if (zips.count(r.zip)) {
        sum += r.value;
        ++n;
      }
    }
    const Value got = execute(q, d.store, d.index).rows[0][0];
    if (n == 0) {
      CHECK(std::holds_alternative<std::monostate>(got));
    } else {
      CHECK(std::get<double>(got) == doctest::Approx(sum / n).epsilon(1e-9));
    }
  }
}

TEST_CASE("random ASTs: oracle equivalence, round trip, commutativity") {
  std::mt19937_64 rng(42);
  int executed = 0;
  for (int store_i = 0; store_i < 40; ++store_i) {
    const Store store = bulk_load(gen::random_tables(rng));
    const SpatialIndex index = build_index(store);
    for (int q = 0; q < 25; ++q) {
      QueryAst ast = gen::random_ast(rng, store);
      CAPTURE(render_sql(ast));
      CHECK(parse_sql(render_sql(ast)) == ast);
      CHECK_NOTHROW(clean_sql(render_sql(ast)));
      const auto want = oracle::evaluate(ast, store.tables());
      check_equal(Executor(store, index).execute(ast), want);
      check_equal(Executor(store, index, {false}).execute(ast), want);
      std::shuffle(ast.predicates.begin(), ast.predicates.end(), rng);
      check_equal(Executor(store, index).execute(ast), want);
      ++executed;
    }
  }
  CHECK(executed == 1000);
}
