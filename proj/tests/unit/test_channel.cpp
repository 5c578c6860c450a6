#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "v2x/channel.hpp"
#include "v2x/errors.hpp"

using namespace v2x;

namespace {
double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}
}  // namespace

TEST_SUITE("channel") {

TEST_CASE("db helpers invert each other") {
  CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
  CHECK(db_to_linear(0.0) == 1.0);
  CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
  CHECK(mw_to_dbm(dbm_to_mw(-103.4)) == doctest::Approx(-103.4));
  CHECK(dbm_to_mw(23.0) == doctest::Approx(199.52623149688787).epsilon(1e-12));
}

TEST_CASE("free-space pathloss at reference distances") {
  ChannelConfig cfg;  // 5.9 GHz
  CHECK(rel_err(free_space_pathloss_db(100.0, cfg), 87.85881241889156) <
        1e-12);
  CHECK(rel_err(free_space_pathloss_db(10.0, cfg), 67.85881241889156) < 1e-12);
  CHECK(rel_err(free_space_pathloss_db(300.0, cfg), 97.40123751328481) <
        1e-12);
}

TEST_CASE("two-slope pathloss at reference distances") {
  ChannelConfig cfg;
  // Breakpoint for h_eff = 0.5 m at 5.9 GHz sits just short of 20 m, so
  // 10 m exercises the near slope and 300 m the far slope.
  CHECK(rel_err(winner_b1_pathloss_db(10.0, cfg), 65.13764014612251) < 1e-12);
  CHECK(rel_err(winner_b1_pathloss_db(300.0, cfg), 119.1445694584868) < 1e-12);
}

TEST_CASE("combined pathloss takes the larger model") {
  ChannelConfig cfg;
  // Free space dominates close in, the two-slope model far out.
  CHECK(pathloss_db(10.0, cfg) == free_space_pathloss_db(10.0, cfg));
  CHECK(pathloss_db(300.0, cfg) == winner_b1_pathloss_db(300.0, cfg));
  for (double d : {0.5, 1.0, 5.0, 20.0, 100.0, 1000.0}) {
    CHECK(pathloss_db(d, cfg) >= free_space_pathloss_db(d, cfg));
    CHECK(pathloss_db(d, cfg) >= winner_b1_pathloss_db(d, cfg));
  }
}

TEST_CASE("combined pathloss is monotone in distance") {
  ChannelConfig cfg;
  double prev = pathloss_db(1.0, cfg);
  for (double d = 1.5; d <= 2000.0; d *= 1.07) {
    const double pl = pathloss_db(d, cfg);
    CHECK(pl >= prev);
    prev = pl;
  }
}

TEST_CASE("distances below the floor are clamped, non-positive rejected") {
  ChannelConfig cfg;
  CHECK(pathloss_db(0.25, cfg) == pathloss_db(cfg.distance_floor_m, cfg));
  CHECK_THROWS_AS(pathloss_db(0.0, cfg), std::invalid_argument);
  CHECK_THROWS_AS(pathloss_db(-3.0, cfg), std::invalid_argument);
}

TEST_CASE("leakage weights are symmetric with unit co-channel") {
  ChannelConfig cfg;
  CHECK(ibe_weight(1, 1, cfg) == 1.0);
  CHECK(ibe_weight(2, 2, cfg) == 1.0);
  CHECK(ibe_weight(1, 2, cfg) == 1e-3);
  CHECK(ibe_weight(2, 1, cfg) == 1e-3);
  CHECK(ibe_weight(1, 3, cfg) == 1e-4);
  CHECK_THROWS_AS(ibe_weight(1, 5, cfg), std::out_of_range);
}

TEST_CASE("link gain combines antenna gains, shadowing and pathloss") {
  ChannelConfig cfg;  // 3 dB per antenna
  const double pl = free_space_pathloss_db(100.0, cfg);
  CHECK(rel_err(link_gain_from_pathloss(pl, 0.0, cfg),
                6.518066066375348e-09) < 1e-12);
  // 10 dB of shadowing costs exactly one order of magnitude.
  CHECK(rel_err(link_gain_from_pathloss(pl, 10.0, cfg),
                6.518066066375348e-10) < 1e-12);
  CHECK(link_gain_linear(100.0, 0.0, cfg) ==
        link_gain_from_pathloss(pathloss_db(100.0, cfg), 0.0, cfg));
}

TEST_CASE("config validation pins the leakage vector invariants") {
  ChannelConfig cfg;
  CHECK_NOTHROW(cfg.validate(3));

  SUBCASE("co-channel weight must be one") {
    cfg.ibe_vector = {0.9, 1e-3};
    CHECK_THROWS_AS(cfg.validate(2), ConfigError);
  }
  SUBCASE("weights must be positive") {
    cfg.ibe_vector = {1.0, 0.0};
    CHECK_THROWS_AS(cfg.validate(2), ConfigError);
  }
  SUBCASE("one weight per sub-band offset") {
    CHECK_THROWS_AS(cfg.validate(4), ConfigError);
  }
  SUBCASE("antenna height above the effective-height origin") {
    cfg.b1.antenna_height_m = 1.0;
    CHECK_THROWS_AS(cfg.validate(3), ConfigError);
  }
  SUBCASE("positive correlation distance") {
    cfg.shadow_corr_dist_m = 0.0;
    CHECK_THROWS_AS(cfg.validate(3), ConfigError);
  }
}

TEST_CASE("shadow field draws are keyed, not sequential") {
  ShadowField a(1234, 7.0, 10.0);
  ShadowField b(1234, 7.0, 10.0);
  a.begin_window(WindowIndex{3});
  b.begin_window(WindowIndex{3});

  // Different pair update order, same values.
  const double a01 = a.update(0, 1, {10, 0});
  const double a23 = a.update(2, 3, {50, 0});
  const double b23 = b.update(2, 3, {50, 0});
  const double b01 = b.update(0, 1, {10, 0});
  CHECK(a01 == b01);
  CHECK(a23 == b23);

  // Pair key ignores argument order.
  ShadowField c(1234, 7.0, 10.0);
  c.begin_window(WindowIndex{3});
  CHECK(c.update(1, 0, {10, 0}) == a01);

  // Other windows and seeds give other draws.
  ShadowField d(1234, 7.0, 10.0);
  d.begin_window(WindowIndex{4});
  CHECK(d.update(0, 1, {10, 0}) != a01);
  ShadowField e(1235, 7.0, 10.0);
  e.begin_window(WindowIndex{3});
  CHECK(e.update(0, 1, {10, 0}) != a01);
}

TEST_CASE("shadow value defaults to zero until first update") {
  ShadowField f(1, 7.0, 10.0);
  CHECK(f.value_db(4, 9) == 0.0);
  f.begin_window(WindowIndex{0});
  const double v = f.update(4, 9, {0, 0});
  CHECK(f.value_db(4, 9) == v);
  CHECK(f.value_db(9, 4) == v);
}

TEST_CASE("a static pair fully decorrelates only with displacement") {
  // Zero displacement keeps the old value exactly (rho = 1).
  ShadowField f(42, 7.0, 10.0);
  f.begin_window(WindowIndex{0});
  const double v0 = f.update(0, 1, {100, 0});
  f.begin_window(WindowIndex{1});
  CHECK(f.update(0, 1, {100, 0}) == doctest::Approx(v0).epsilon(1e-12));
}

TEST_CASE("shadowing long-run statistics match the model") {
  // One pair stepping 10 m per window: rho = e^-1 per step.
  ShadowField f(2024, 7.0, 10.0);
  const int n = 60000;
  std::vector<double> xs;
  xs.reserve(n);
  double pos = 0.0;
  for (int w = 0; w < n; ++w) {
    f.begin_window(WindowIndex{w});
    xs.push_back(f.update(0, 1, {pos, 0.0}));
    pos += 10.0;
  }
  double sum = 0.0, sum_sq = 0.0, lag = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += xs[static_cast<std::size_t>(i)];
    sum_sq += xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i)];
    if (i > 0)
      lag += xs[static_cast<std::size_t>(i)] * xs[static_cast<std::size_t>(i - 1)];
  }
  const double mean = sum / n;
  const double var = sum_sq / n - mean * mean;
  const double corr = (lag / (n - 1) - mean * mean) / var;
  CHECK(std::abs(std::sqrt(var) - 7.0) < 0.5);
  CHECK(std::abs(corr - std::exp(-1.0)) < 0.1);
}

}  // TEST_SUITE
