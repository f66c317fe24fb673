#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "tvar/oracle.hpp"
#include "tvar/path.hpp"
#include "tvar/rng.hpp"

using tvar::SamplePath;

namespace {

SamplePath zigzag() {  // the worked example used throughout
  return SamplePath::uniform(0.0, 1.0, {0.0, 1.0, 0.2, 1.2});
}

}  // namespace

TEST_CASE("SamplePath validation") {
  CHECK_THROWS_AS(SamplePath::make({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(SamplePath::make({0.0, 1.0}, {0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SamplePath::make({0.0, 0.0}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SamplePath::make({1.0, 0.5}, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      SamplePath::make({0.0}, {std::numeric_limits<double>::quiet_NaN()}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      SamplePath::make({std::numeric_limits<double>::infinity()}, {0.0}),
      std::invalid_argument);
  CHECK_THROWS_AS(SamplePath::uniform(0.0, 0.0, {1.0, 2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SamplePath::uniform(0.0, -0.1, {1.0, 2.0}),
                  std::invalid_argument);

  const SamplePath p = SamplePath::uniform(2.0, 0.5, {1.0, 4.0, 2.0});
  CHECK(p.size() == 3);
  CHECK(p.a() == 2.0);
  CHECK(p.b() == 3.0);
  CHECK(p.times[1] == 2.5);

  const SamplePath single = SamplePath::make({0.0}, {7.0});
  CHECK(single.size() == 1);
  CHECK(tvar::total_variation(single) == 0.0);
}

TEST_CASE("negate, restrict, time_change") {
  const SamplePath p = zigzag();

  const SamplePath n = tvar::negate(p);
  CHECK(n.values[1] == -1.0);
  CHECK(n.times == p.times);

  const SamplePath mid = tvar::restrict(p, 1.0, 2.0);
  CHECK(mid.size() == 2);
  CHECK(mid.values[0] == 1.0);
  CHECK(mid.values[1] == 0.2);
  CHECK_THROWS_AS(tvar::restrict(p, 10.0, 20.0), std::invalid_argument);
  CHECK_THROWS_AS(tvar::restrict(p, 2.0, 1.0), std::invalid_argument);

  const SamplePath warped = tvar::time_change(p, {0.0, 0.1, 10.0, 1000.0});
  CHECK(warped.values == p.values);
  CHECK(warped.times[2] == 10.0);
  CHECK_THROWS_AS(tvar::time_change(p, {0.0, 0.1, 0.05, 1.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tvar::time_change(p, {0.0, 1.0}), std::invalid_argument);

  // Variation functionals depend on the value sequence only.
  CHECK(tvar::brute_force_tv(warped, 0.5) == tvar::brute_force_tv(p, 0.5));
  CHECK(tvar::brute_force_utv(warped, 0.5) == tvar::brute_force_utv(p, 0.5));
}

TEST_CASE("total_variation") {
  CHECK(tvar::total_variation(zigzag()) == doctest::Approx(2.8).epsilon(1e-15));
  CHECK(tvar::total_variation(SamplePath::uniform(0, 1, {3.0, 3.0, 3.0})) ==
        0.0);
}

TEST_CASE("brute-force oracles on the worked example") {
  const SamplePath p = zigzag();

  CHECK(tvar::brute_force_utv(p, 0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(tvar::brute_force_dtv(p, 0.5) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(tvar::brute_force_tv(p, 0.5) == doctest::Approx(1.3).epsilon(1e-15));

  // c = 0 degrades to the plain total variation.
  CHECK(tvar::brute_force_tv(p, 0.0) ==
        doctest::Approx(tvar::total_variation(p)).epsilon(1e-15));

  // Threshold above the oscillation range kills everything.
  CHECK(tvar::brute_force_tv(p, 5.0) == 0.0);
  CHECK(tvar::brute_force_utv(p, 5.0) == 0.0);

  CHECK_THROWS_AS(tvar::brute_force_tv(p, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(tvar::brute_force_tv(
                      p, std::numeric_limits<double>::quiet_NaN()),
                  std::invalid_argument);
}

TEST_CASE("brute-force oracles: structure on simple shapes") {
  // Monotone path: one pair spanning the whole rise is optimal.
  const SamplePath up = SamplePath::uniform(0, 1, {0.0, 0.3, 0.35, 1.4, 2.0});
  CHECK(tvar::brute_force_tv(up, 0.5) ==
        doctest::Approx(1.5).epsilon(1e-15));  // range 2.0 minus c
  CHECK(tvar::brute_force_utv(up, 0.5) == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(tvar::brute_force_dtv(up, 0.5) == 0.0);

  const SamplePath down = tvar::negate(up);
  CHECK(tvar::brute_force_dtv(down, 0.5) ==
        doctest::Approx(1.5).epsilon(1e-15));
  CHECK(tvar::brute_force_utv(down, 0.5) == 0.0);

  // Constant path: exactly zero for every threshold.
  const SamplePath flat = SamplePath::uniform(0, 1, {1.0, 1.0, 1.0, 1.0});
  CHECK(tvar::brute_force_tv(flat, 0.01) == 0.0);
  CHECK(tvar::brute_force_tv(flat, 0.0) == 0.0);
}

TEST_CASE("prefix oracles agree with totals and are monotone") {
  tvar::Xoshiro256pp rng(7, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.next() % 20;
    std::vector<double> v(n);
    for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
    const SamplePath p = SamplePath::uniform(0.0, 0.5, std::move(v));
    for (double c : {0.05, 0.4, 1.1}) {
      const auto tvp = tvar::brute_force_tv_prefix(p, c);
      const auto utvp = tvar::brute_force_utv_prefix(p, c);
      const auto dtvp = tvar::brute_force_dtv_prefix(p, c);
      REQUIRE(tvp.size() == p.size());
      CHECK(tvp.front() == 0.0);
      CHECK(tvp.back() == doctest::Approx(tvar::brute_force_tv(p, c))
                              .epsilon(1e-15));
      CHECK(utvp.back() == doctest::Approx(tvar::brute_force_utv(p, c))
                               .epsilon(1e-15));
      for (std::size_t i = 1; i < tvp.size(); ++i) {
        CHECK(tvp[i] >= tvp[i - 1]);
        CHECK(utvp[i] >= utvp[i - 1]);
        CHECK(dtvp[i] >= dtvp[i - 1]);
      }
      // The additive decomposition holds for the independent DP recurrences.
      for (std::size_t i = 0; i < tvp.size(); ++i) {
        CHECK(std::abs(tvp[i] - (utvp[i] + dtvp[i])) < 1e-12);
      }
    }
  }
}
