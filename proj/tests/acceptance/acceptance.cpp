// Acceptance suite: one PASS/FAIL line per top-level criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "railestate/bench.hpp"
#include "railestate/errors.hpp"
#include "railestate/forecast.hpp"
#include "railestate/ingest.hpp"
#include "railestate/nl2sql.hpp"
#include "railestate/query.hpp"
#include "railestate/synthetic.hpp"

using namespace railestate;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

std::string squash(std::string s) {
  s = std::regex_replace(s, std::regex(R"(\s+)"), " ");
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

// ---------------------------------------------------------------------------

Outcome case_study() {
  Outcome o;
  const auto t0 = Clock::now();
  const Dataset data(run_ingest(read_sources(fixtures::dir("casestudy"))).store);
  const Assistant assistant(data.store, data.index);
  const Answer a = assistant.ask("What is the highest price in Falls Church in the year 2000?");
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  const std::string want_sql =
      "SELECT MAX(\"value\") AS highest_price\nFROM \"Locations_Prices\"\nWHERE \"city\" = 'Falls Church' AND \"date\"\n"
      "    BETWEEN '2000-01-01' AND '2000-12-31';";
  o.expect(a.status == AnswerStatus::Ok, "status");
  o.expect(a.text == "The highest price in Falls Church in the year 2000 was $308,002.64", "answer: " + a.text);
  o.expect(squash(a.sql) == squash(want_sql), "sql: " + a.sql);
  o.expect(secs < 1.0, fmt::format("runtime {:.3f}s", secs));
  o.detail = fmt::format("answer matched, sql matched, {:.3f}s", secs);
  return o;
}

Outcome forecast_equivalence() {
  Outcome o;
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double base = gen::uniform(rng, 1e4, 5e6);
    DeltaSeries d{make_month(2010, 1), {}};
    const int len = gen::uniform_int(rng, 1, 36);
    for (int k = 0; k < len; ++k) d.deltas.push_back(gen::uniform(rng, -15.0, 15.0));
    const int h = gen::uniform_int(rng, 1, len);
    const double rec = project(base, d, h);
    const double closed = oracle::closed_form(base, d.deltas, h);
    worst = std::max(worst, std::abs(rec - closed) / closed);
    o.expect(rel_close(rec, closed, 1e-9), fmt::format("triple {} recursion {} vs product {}", i, rec, closed));

    // Composition: h1 then h2 equals h1 + h2.
    if (h >= 2) {
      const int h1 = gen::uniform_int(rng, 1, h - 1);
      DeltaSeries rest{d.base_month + std::chrono::months{h1},
                       std::vector<double>(d.deltas.begin() + h1, d.deltas.end())};
      const double composed = project(project(base, d, h1), rest, h - h1);
      o.expect(rel_close(composed, rec, 1e-9), fmt::format("composition {} vs {}", composed, rec));
    }
  }
  o.detail = fmt::format("1000 triples, max relative error {:.2e}", worst);
  return o;
}

Outcome spatial_suite() {
  Outcome o;
  std::mt19937_64 rng(202);
  std::size_t checks = 0;
  for (int poly = 0; poly < 500; ++poly) {
    const GeoPoint c{gen::uniform(rng, -60, 60), gen::uniform(rng, -170, 170)};
    std::vector<Polygon> parts;
    Polygon main{{gen::star_ring(rng, c, 1.0, gen::uniform_int(rng, 3, 24))}};
    if (poly % 4 == 1) main.rings.push_back(gen::star_ring(rng, c, 0.25, gen::uniform_int(rng, 3, 8)));
    parts.push_back(main);
    if (poly % 5 == 2) parts.push_back(Polygon{{gen::star_ring(rng, {c.lat, c.lon + 2.5}, 0.8, 9)}});
    const Boundary b = make_boundary(fmt::format("{:05d}", poly), parts);
    const auto rings = oracle::all_rings(b);
    for (int i = 0; i < 100; ++i) {
      const GeoPoint p{c.lat + gen::uniform(rng, -1.1, 1.1), c.lon + gen::uniform(rng, -1.1, 3.6)};
      o.expect(point_in_polygon(p, b) == oracle::even_odd(p, rings),
               fmt::format("pip polygon {} point ({}, {})", poly, p.lat, p.lon));
      ++checks;
    }
  }

  std::vector<Boundary> bs;
  for (int i = 0; i < 1000; ++i) {
    const double s = gen::uniform(rng, 38.6, 39.2), w = gen::uniform(rng, -77.5, -76.7);
    bs.push_back(make_boundary(fmt::format("{:05d}", 30000 + i),
                               {Polygon{{gen::rect_ring(s, w, s + gen::uniform(rng, 0.002, 0.04),
                                                        w + gen::uniform(rng, 0.002, 0.04))}}}));
  }
  std::vector<Station> st;
  for (int i = 0; i < 400; ++i) {
    st.push_back({fmt::format("S{}", i), "s", {gen::uniform(rng, 38.6, 39.2), gen::uniform(rng, -77.5, -76.7)}});
  }
  const SpatialIndex idx(bs, st);
  o.expect(idx.check_invariants(), "tree invariants");
  for (int q = 0; q < 1000; ++q) {
    const GeoPoint c{gen::uniform(rng, 38.5, 39.3), gen::uniform(rng, -77.6, -76.6)};
    const double r = gen::uniform(rng, 0, 12000);
    std::set<std::string> sw, sg, zw, zg;
    for (const auto& s : st)
      if (oracle::distance_m(c, s.location) <= r) sw.insert(s.station_id);
    for (const auto& h : idx.stations_within_radius(c, r)) sg.insert(h.station.station_id);
    for (const auto& b : bs)
      if (oracle::distance_m(c, b.centroid) <= r) zw.insert(b.zip);
    for (const auto& h : idx.zips_within_radius(c, r)) zg.insert(h.zip);
    o.expect(sw == sg, fmt::format("station radius query {}", q));
    o.expect(zw == zg, fmt::format("zip radius query {}", q));
    o.expect(idx.enclosing_zip(c) == oracle::enclosing_zip(c, bs), fmt::format("containment query {}", q));
  }
  o.detail = fmt::format("{} point-in-polygon checks, 1000 radius queries x 2 indexes", checks);
  return o;
}

Outcome executor_suite() {
  Outcome o;
  std::mt19937_64 rng(303);
  int n = 0;
  for (int s = 0; s < 50; ++s) {
    const Store store = bulk_load(gen::random_tables(rng));
    const SpatialIndex index = build_index(store);
    const Executor exec(store, index);
    for (int q = 0; q < 20; ++q, ++n) {
      const QueryAst ast = gen::random_ast(rng, store);
      const std::string sql = render_sql(ast);
      o.expect(parse_sql(sql) == ast, "round trip: " + sql);
      const ResultSet got = exec.execute(ast);
      const auto want = oracle::evaluate(ast, store.tables());
      bool same = got.columns == want.columns && got.rows.size() == want.rows.size();
      for (std::size_t i = 0; same && i < got.rows.size(); ++i) {
        for (std::size_t j = 0; same && j < got.rows[i].size(); ++j) {
          const auto* a = std::get_if<double>(&got.rows[i][j]);
          const auto* b = std::get_if<double>(&want.rows[i][j]);
          const bool avg = std::holds_alternative<Aggregate>(ast.target) &&
                           std::get<Aggregate>(ast.target).fn == AggregateFn::Avg;
          same = (a && b && avg) ? rel_close(*a, *b, 1e-9) : got.rows[i][j] == want.rows[i][j];
        }
      }
      o.expect(same, "execute vs oracle: " + sql);
    }
  }
  o.detail = fmt::format("{} random queries over 50 random stores", n);
  return o;
}

Outcome sanitizer_suite() {
  Outcome o;
  // Everything the grammar can emit over the planted fixture.
  const auto& data = fixtures::casestudy();
  const Assistant assistant(data.store, data.index);
  std::vector<Place> places;
  for (const auto& c : data.store.cities()) places.push_back({PlaceKind::City, c, c, {}});
  for (const auto& z : data.store.zips()) places.push_back({PlaceKind::Zip, z, z, {}});
  for (const auto& s : data.store.stations()) places.push_back({PlaceKind::Station, s.station_id, s.name, {}});
  const std::vector<TimeSlot> times{std::monostate{}, 2000, 2001, YearRange{2000, 2001}, make_month(2000, 6)};
  std::size_t accepted = 0, generated = 0;
  for (int kind = 0; kind <= static_cast<int>(IntentKind::CountRecords); ++kind) {
    for (const auto& place : places) {
      for (const auto& time : times) {
        for (int variant = 0; variant < 2; ++variant) {
          Intent in;
          in.kind = static_cast<IntentKind>(kind);
          in.extreme = variant ? Extreme::Min : Extreme::Max;
          in.subject = variant ? CountSubject::Stations : CountSubject::PriceRecords;
          in.place = place;
          in.time = time;
          QueryAst ast;
          try {
            ast = assistant.intent_to_ast(assistant.resolve_defaults(in));
          } catch (const Error&) {
            continue;  // combination the grammar never produces
          }
          ++generated;
          const std::string sql = render_sql(ast);
          try {
            const std::string clean = clean_sql(sql);
            parse_sql(clean);
            ++accepted;
          } catch (const std::exception& e) {
            o.expect(false, "rejected grammar output: " + sql + " (" + e.what() + ")");
          }
        }
      }
    }
  }
  // And whatever the question grammar itself routes.
  for (const char* q : {"What is the highest price in Falls Church in the year 2000?",
                        "What is the average price in 22046?", "Which stations are near Clarendon?",
                        "What is the forecast for 22203?", "How many stations are within 22046?",
                        "How many price records are there in Arlington between 2000 and 2001?",
                        "What was the price in 20001 in June 2001?"}) {
    const Answer a = assistant.ask(q);
    ++generated;
    try {
      clean_sql(a.sql);
      ++accepted;
    } catch (const std::exception& e) {
      o.expect(false, std::string("rejected: ") + q + " -> " + a.sql);
    }
  }

  // Injection and mutation corpus.
  const std::string base = R"(SELECT COUNT(*) FROM "Stations")";
  const std::vector<std::string> verbs{"DROP TABLE \"Stations\"", "DELETE FROM \"Locations_Prices\"",
                                       "UPDATE \"Locations_Prices\" SET \"value\" = 1",
                                       "INSERT INTO \"Lines\" VALUES ('x','y','z')",
                                       "ALTER TABLE \"Stations\" ADD COLUMN x", "CREATE TABLE t (x)",
                                       "TRUNCATE \"Predictions\"", "ATTACH DATABASE 'x' AS y",
                                       "PRAGMA writable_schema = 1", "REPLACE INTO \"Lines\" VALUES (1)",
                                       "GRANT ALL ON \"Stations\" TO public", "VACUUM"};
  std::vector<std::pair<std::string, UnsafeReason>> corpus;
  for (const auto& v : verbs) {
    corpus.emplace_back(base + "; " + v + ";", UnsafeReason::MultipleStatements);
    corpus.emplace_back(base + ";" + v, UnsafeReason::MultipleStatements);
    corpus.emplace_back(v, UnsafeReason::NonSelect);
    corpus.emplace_back(base + " -- ; " + v, UnsafeReason::Comment);
    corpus.emplace_back(base + " /* */ ; " + v, UnsafeReason::Comment);
  }
  for (const std::string& s : {std::string("  delete from \"Stations\""), std::string("with x as (select 1) delete from y"),
                               std::string("EXPLAIN SELECT 1"), std::string("\nDrOp TABLE x")}) {
    corpus.emplace_back(s, UnsafeReason::NonSelect);
  }
  corpus.emplace_back(R"(SELECT COUNT(*) FROM "Stations" WHERE "name" = 'x'; DROP TABLE "Stations"; --')",
                      UnsafeReason::MultipleStatements);
  corpus.emplace_back(R"(SELECT COUNT(*) FROM "Locations_Prices" WHERE "city" = '' OR 1=1 --')", UnsafeReason::Comment);
  corpus.emplace_back(R"(SELECT COUNT(*) FROM "Locations_Prices" WHERE "city" = '' OR '1'='1')", UnsafeReason::ParseFailure);
  corpus.emplace_back(R"(SELECT * FROM "Stations" UNION SELECT * FROM "Lines")", UnsafeReason::ParseFailure);
  corpus.emplace_back(R"(SELECT COUNT(*) FROM "Stations" WHERE "name" = 'unterminated)", UnsafeReason::ParseFailure);
  corpus.emplace_back("", UnsafeReason::ParseFailure);
  corpus.emplace_back(";", UnsafeReason::ParseFailure);

  std::size_t rejected = 0;
  for (const auto& [sql, reason] : corpus) {
    try {
      clean_sql(sql);
      o.expect(false, "accepted: " + sql);
    } catch (const UnsafeSqlError& e) {
      const bool ok = e.reason() == reason;
      o.expect(ok, fmt::format("{} -> {} (expected {})", sql, to_string(e.reason()), to_string(reason)));
      rejected += ok;
    }
  }
  o.expect(corpus.size() >= 50, "corpus too small");
  o.expect(generated > 0 && accepted == generated, "grammar acceptance");
  o.detail = fmt::format("grammar output accepted {}/{}, injection corpus rejected with expected reason {}/{}",
                         accepted, generated, rejected, corpus.size());
  return o;
}

Outcome etl_properties() {
  Outcome o;
  // The documented example.
  {
    RawPrices raw;
    for (int i = 1; i <= 20; ++i) raw.records.push_back({fmt::format("{:05d}", 10000 + i), "C", "VA", make_month(2000, 1), double(i)});
    const auto out = clean_records(raw);
    const auto caps = out.report.per_month_caps.at(make_month(2000, 1));
    o.expect(caps.p5 == 1.0 && caps.p95 == 19.0, fmt::format("1..20 caps {} {}", caps.p5, caps.p95));
  }
  std::mt19937_64 rng(404);
  int fixtures_run = 0;
  for (int trial = 0; trial < 200; ++trial, ++fixtures_run) {
    RawPrices raw;
    const int zips = gen::uniform_int(rng, 1, 40), months = gen::uniform_int(rng, 1, 18);
    const int all_null_month = gen::uniform_int(rng, 0, months - 1);
    const int single_month = gen::uniform_int(rng, 0, months - 1);
    for (int z = 0; z < zips; ++z) {
      for (int m = 0; m < months; ++m) {
        const Month mo = make_month(2000, 1) + std::chrono::months{m};
        const std::string zip = fmt::format("{:05d}", 20000 + z);
        const bool null = m == all_null_month || (m == single_month && z > 0) || gen::uniform_int(rng, 0, 9) == 0;
        if (null) {
          raw.nulls.push_back({zip, mo});
        } else {
          const double v = gen::uniform_int(rng, 0, 3) == 0 ? gen::uniform(rng, 1e3, 5e6) : gen::uniform(rng, 2e5, 8e5);
          raw.records.push_back({zip, "C", "VA", mo, v});
        }
      }
    }
    const std::size_t n_in = raw.records.size() + raw.nulls.size();
    const auto out = clean_records(raw);
    const auto& r = out.report;
    o.expect(r.rows_in == n_in && r.rows_in == r.rows_out + r.rows_dropped_null, "conservation");
    o.expect(out.records.size() == r.rows_out, "rows_out");

    std::map<Month, std::vector<double>> before;
    for (const auto& rec : raw.records) before[rec.month].push_back(rec.value);
    for (const auto& [m, vals] : before) {
      if (vals.size() < 2) continue;
      const double p5 = oracle::nearest_rank(vals, 5), p95 = oracle::nearest_rank(vals, 95);
      for (const auto& rec : out.records) {
        if (rec.month != m) continue;
        o.expect(rec.value >= p5 && rec.value <= p95, fmt::format("bound {} in [{}, {}]", rec.value, p5, p95));
      }
    }
    // Order preservation within a month.
    std::map<std::pair<std::string, Month>, double> capped;
    for (const auto& rec : out.records) capped[{rec.zip, rec.month}] = rec.value;
    for (std::size_t i = 0; i + 1 < raw.records.size(); ++i) {
      const auto& a = raw.records[i];
      const auto& b = raw.records[i + 1];
      if (a.month != b.month) continue;
      const double ca = capped.at({a.zip, a.month}), cb = capped.at({b.zip, b.month});
      o.expect((a.value <= b.value) ? ca <= cb : ca >= cb, "order preservation");
    }
    // Idempotence.
    const auto again = clean_records(RawPrices{out.records, {}});
    o.expect(again.records == out.records, "idempotence");
  }
  o.detail = fmt::format("1..20 example plus {} randomized fixtures with all-null and single-value months", fixtures_run);
  return o;
}

Outcome latency() {
  Outcome o;
  const Dataset data(bulk_load(make_synthetic_tables()));
  o.expect(data.store.prices().size() == 300'000, "price rows");
  o.expect(data.store.boundaries().size() == 10'000, "boundaries");
  const BenchReport report = run_bench(data, BenchOptions{200, kDefaultNearbyRadiusM, 11});
  double speedup = 0.0, worst_p95 = 0.0;
  for (const auto& w : report.workloads) {
    worst_p95 = std::max(worst_p95, w.indexed.p95_ms);
    o.expect(w.indexed.p95_ms < 1000.0, fmt::format("{} p95 {} ms", w.name, w.indexed.p95_ms));
    if (w.name == "zip_centroid_radius") speedup = w.median_speedup;
  }
  o.expect(speedup >= 5.0, fmt::format("radius speedup {:.1f}x", speedup));
  o.detail = fmt::format("300000 rows / 10000 polygons: worst p95 {:.3f} ms, radius median speedup {:.1f}x",
                         worst_p95, speedup);
  return o;
}

Outcome forecast_table() {
  Outcome o;
  std::mt19937_64 rng(505);
  Tables t;
  for (int z = 0; z < 50; ++z) {
    const std::string zip = fmt::format("{:05d}", 22100 + z);
    const int months = z < 40 ? gen::uniform_int(rng, 13, 60) : gen::uniform_int(rng, 1, 12);
    double v = gen::uniform(rng, 2e5, 9e5);
    for (int m = 0; m < months; ++m) {
      t.prices.push_back({zip, "C", "VA", make_month(2005, 1) + std::chrono::months{m}, v});
      v *= 1 + gen::uniform(rng, -0.02, 0.03);
    }
  }
  const Store store = bulk_load(t);
  const auto run = compute_predictions(store);
  o.expect(run.rows.size() == 120, fmt::format("{} rows", run.rows.size()));
  o.expect(run.skipped.size() == 10, fmt::format("{} skipped", run.skipped.size()));
  std::map<std::string, std::set<int>> horizons;
  for (const auto& p : run.rows) {
    horizons[p.zip].insert(p.horizon_months);
    // Per-zip recomputation: trailing mean change, then the closed-form product.
    const Series s = series_for_zip(store, p.zip);
    double mean = 0;
    for (std::size_t i = s.size() - 12; i < s.size(); ++i) mean += (s[i].second / s[i - 1].second - 1) * 100 / 12;
    const double want = oracle::closed_form(s.back().second, std::vector<double>(12, mean), p.horizon_months);
    o.expect(p.base_month == s.back().first, "base month " + p.zip);
    o.expect(rel_close(p.predicted_value, want, 1e-9), fmt::format("{} h{} {} vs {}", p.zip, p.horizon_months, p.predicted_value, want));
  }
  o.expect(horizons.size() == 40, "zips with predictions");
  for (const auto& [zip, hs] : horizons) o.expect(hs == std::set<int>{1, 3, 12}, "horizons " + zip);
  o.detail = fmt::format("{} rows for {} zips, {} skipped", run.rows.size(), horizons.size(), run.skipped.size());
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"case-study replay", case_study},
      {"forecast recursion equals closed form", forecast_equivalence},
      {"spatial predicates match oracles", spatial_suite},
      {"executor matches nested-loop oracle", executor_suite},
      {"sanitizer accepts grammar, rejects injections", sanitizer_suite},
      {"ETL cleaning properties", etl_properties},
      {"latency and index speedup", latency},
      {"forecast table shape", forecast_table},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    fmt::print("{} {} ({:.2f}s): {}\n", o.pass ? "PASS" : "FAIL", name, secs, o.detail);
    for (const auto& f : o.failures) fmt::print("    {}\n", f);
    failed += !o.pass;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
