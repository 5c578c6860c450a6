#include <doctest.h>

#include <stdexcept>

#include "v2x/window_plan.hpp"

using namespace v2x;

TEST_SUITE("window_plan") {

TEST_CASE("assignments are readable per vehicle and band") {
  GridConfig g;
  WindowPlan plan(2, g);
  plan.assign(0, {1, 10});
  plan.assign(0, {2, 20});
  plan.assign(0, {3, 30});
  plan.assign(1, {1, 10});
  plan.assign(1, {2, 99});
  plan.assign(1, {3, 1});

  CHECK(plan.slot(0, 2) == SubchannelId{2, 20});
  CHECK(plan.slot(1, 3) == SubchannelId{3, 1});
  CHECK(plan.transmits_in_subframe(0, 10));
  CHECK(plan.transmits_in_subframe(0, 30));
  CHECK_FALSE(plan.transmits_in_subframe(0, 99));

  plan.finalize();
  CHECK(plan.finalized());

  const auto& sf10 = plan.transmissions_in_subframe(10);
  REQUIRE(sf10.size() == 2);
  CHECK(sf10[0].vehicle == 0);
  CHECK(sf10[0].sub_band == 1);
  CHECK(sf10[1].vehicle == 1);
  CHECK(sf10[1].sub_band == 1);
  CHECK(plan.transmissions_in_subframe(55).empty());
}

TEST_CASE("reassignment before finalize overwrites") {
  WindowPlan plan(1, GridConfig{});
  plan.assign(0, {1, 5});
  plan.assign(0, {1, 6});
  plan.assign(0, {2, 7});
  plan.assign(0, {3, 8});
  CHECK(plan.slot(0, 1) == SubchannelId{1, 6});
  plan.finalize();
  CHECK(plan.transmissions_in_subframe(5).empty());
  CHECK(plan.transmissions_in_subframe(6).size() == 1);
}

TEST_CASE("lifecycle misuse throws") {
  GridConfig g;
  WindowPlan plan(1, g);
  CHECK_THROWS_AS(plan.transmissions_in_subframe(1), std::logic_error);
  plan.assign(0, {1, 1});
  // bands 2 and 3 missing
  CHECK_THROWS_AS(plan.finalize(), std::logic_error);

  WindowPlan full(1, g);
  full.assign(0, {1, 1});
  full.assign(0, {2, 2});
  full.assign(0, {3, 3});
  full.finalize();
  CHECK_THROWS_AS(full.assign(0, {1, 4}), std::logic_error);
}

TEST_CASE("index bounds are enforced") {
  GridConfig g;
  WindowPlan plan(2, g);
  CHECK_THROWS_AS(plan.assign(2, {1, 1}), std::out_of_range);
  CHECK_THROWS_AS(plan.assign(-1, {1, 1}), std::out_of_range);
  CHECK_THROWS_AS(plan.assign(0, {4, 1}), std::out_of_range);
  CHECK_THROWS_AS(plan.assign(0, {1, 0}), std::out_of_range);
  CHECK_THROWS_AS(plan.assign(0, {1, 101}), std::out_of_range);
  CHECK_THROWS_AS(plan.slot(0, 0), std::out_of_range);
}

TEST_CASE("gain matrix stays symmetric with a zero diagonal") {
  GainMatrix m(3);
  m.set(0, 2, 1.5e-8);
  m.set(1, 0, 2.5e-9);
  CHECK(m.at(0, 2) == 1.5e-8);
  CHECK(m.at(2, 0) == 1.5e-8);
  CHECK(m.at(0, 1) == 2.5e-9);
  CHECK(m.at(0, 0) == 0.0);
  CHECK(m.at(1, 1) == 0.0);
  CHECK(m.row(0)[2] == 1.5e-8);
  CHECK(m.row(2)[0] == 1.5e-8);
  CHECK(m.size() == 3);
}

}  // TEST_SUITE
