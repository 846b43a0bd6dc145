#include <doctest.h>

#include <random>

#include "generators.hpp"
#include "railestate/analytics.hpp"
#include "railestate/errors.hpp"

using namespace railestate;

TEST_CASE("bands") {
  CHECK(classify_band(399'999) == PriceBand::Under400k);
  CHECK(classify_band(400'000) == PriceBand::From400kTo500k);
  CHECK(classify_band(500'000) == PriceBand::From500kTo600k);
  CHECK(classify_band(600'000) == PriceBand::Over600k);
  CHECK(classify_band(610'000) == PriceBand::Over600k);
  CHECK(classify_band(1.0) == PriceBand::Under400k);
  CHECK(BandThresholds{}.valid());
  CHECK_FALSE(BandThresholds{{500'000, 400'000, 600'000}}.valid());
  CHECK_FALSE(BandThresholds{{400'000, 500'000}}.valid());
  // Monotone in value.
  std::mt19937_64 rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double a = gen::uniform(rng, 1, 1e6), b = gen::uniform(rng, 1, 1e6);
    if (a <= b) CHECK(classify_band(a) <= classify_band(b));
  }
}

TEST_CASE("zip average") {
  Tables t;
  t.prices = {{"22046", "Falls Church", "VA", make_month(2024, 12), 610'000},
              {"22046", "Falls Church", "VA", make_month(2024, 11), 600'000}};
  const Store s = bulk_load(t);
  CHECK(zip_average(s, "22046", make_month(2024, 12)) == 610'000.0);
  CHECK(zip_average(s, "22046") == 610'000.0);
  CHECK_FALSE(zip_average(s, "00000"));
  CHECK_FALSE(zip_average(s, "22046", make_month(2020, 1)));
}

TEST_CASE("trend summary") {
  const Series two{{make_month(2000, 1), 100'000}, {make_month(2000, 2), 110'000}};
  CHECK(trend_summary(two).total_change_pct == doctest::Approx(10.0));
  CHECK(trend_summary(two).mean_monthly_change_pct == doctest::Approx(10.0));
  const Series flat{{make_month(2000, 1), 5}, {make_month(2000, 2), 5}, {make_month(2000, 3), 5}};
  CHECK(trend_summary(flat).total_change_pct == 0.0);
  CHECK(trend_summary(flat).mean_monthly_change_pct == 0.0);
  CHECK_THROWS_AS(trend_summary(Series{{make_month(2000, 1), 5}}), Error);

  // 300-month random walk against a direct computation.
  std::mt19937_64 rng(2);
  Series walk;
  double v = 300'000;
  for (int m = 0; m < 300; ++m) {
    walk.emplace_back(make_month(2000, 1) + std::chrono::months{m}, v);
    v *= 1 + gen::uniform(rng, -0.02, 0.03);
  }
  double mean = 0, prod = 1;
  for (std::size_t i = 1; i < walk.size(); ++i) {
    const double m = (walk[i].second / walk[i - 1].second - 1) * 100;
    mean += m / 299.0;
    prod *= 1 + m / 100;
  }
  const auto s = trend_summary(walk);
  CHECK(s.first_month == make_month(2000, 1));
  CHECK(s.last_month == make_month(2024, 12));
  CHECK(s.total_change_pct == doctest::Approx((walk.back().second / walk.front().second - 1) * 100).epsilon(1e-9));
  CHECK(s.mean_monthly_change_pct == doctest::Approx(mean).epsilon(1e-9));
  CHECK(s.total_change_pct / 100 == doctest::Approx(prod - 1).epsilon(1e-9));
}

TEST_CASE("growth series") {
  const Series s{{make_month(2000, 1), 100}, {make_month(2000, 2), 150}, {make_month(2000, 3), 200}};
  CHECK(growth_series(s, GrowthMode::Absolute) == s);
  const auto p = growth_series(s, GrowthMode::Percent);
  REQUIRE(p.size() == 3);
  CHECK(p[0].second == 0.0);
  CHECK(p[1].second == doctest::Approx(50.0));
  CHECK(p[2].second == doctest::Approx(100.0));

  // Scaling by c leaves percent mode unchanged.
  Series scaled = s;
  for (auto& [m, v] : scaled) v *= 3.7;
  const auto q = growth_series(scaled, GrowthMode::Percent);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(q[i].second == doctest::Approx(p[i].second).epsilon(1e-12));
  CHECK_THROWS_AS(growth_series({}, GrowthMode::Percent), Error);
}
