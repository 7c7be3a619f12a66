#include <doctest.h>

#include <cmath>

#include "su11/error.hpp"
#include "su11/filtering.hpp"
#include "su11/sweep.hpp"
#include "support.hpp"

using namespace su11;
using su11::test::rel;

namespace {

FilterSpec full_band(const FrequencyAxis& a) {
  double c = 0.5 * (a.extent_lo() + a.extent_hi());
  return {c, 0.5 * (a.extent_hi() - a.extent_lo())};
}

}  // namespace

TEST_CASE("full band reproduces the unfiltered moments") {
  SUBCASE("cw") {
    SweepEngine e(RunConfig{});
    for (double phi : {0.5, 2.9}) {
      auto d = e.decomposition(phi);
      auto f = full_band(d->grid->signal);
      for (double G : {0.1, 3.0}) {
        auto m = filtered_moments(*d, G, f);
        CHECK(rel(m.mean, mean_photons_vacuum(*d, G)) < 1e-9);
        CHECK(rel(m.variance, variance_vacuum(*d, G)) < 1e-8);
      }
    }
  }
  SUBCASE("pulsed") {
    SweepEngine e(test::pulsed_config(128));
    auto d = e.decomposition(2.5);
    auto f = full_band(d->grid->signal);
    for (double G : {0.1, 3.0}) {
      auto m = filtered_moments(*d, G, f);
      CHECK(rel(m.mean, mean_photons_vacuum(*d, G)) < 1e-8);
      CHECK(rel(m.variance, variance_vacuum(*d, G)) < 1e-7);
      CHECK(std::abs(m.cross_imag) < 1e-10 * m.variance);
    }
  }
}

TEST_CASE("narrowing the band removes photons") {
  SweepEngine e(test::pulsed_config(128));
  auto d = e.decomposition(2.0);
  const double c = 0.5 * e.omega_p(), G = 2.0;
  double prev = 0.0;
  for (double hw : {1e9, 1e11, 1e12, 3e12, 6e12, 1.1e13}) {
    auto m = filtered_moments(*d, G, {c, hw});
    CHECK(m.mean > prev);
    CHECK(m.variance >= m.mean);
    prev = m.mean;
  }
  CHECK(filtered_mean(*d, G, {c, 1e6}) < 1e-4 * mean_photons_vacuum(*d, G));
  CHECK(filtered_mean(*d, 0.0, {c, 3e12}) == 0.0);
  CHECK(filtered_variance(*d, 0.0, {c, 3e12}) == 0.0);
}

TEST_CASE("band errors") {
  SweepEngine e(test::pulsed_config(64));
  auto d = e.decomposition(1.0);
  try {
    filtered_mean(*d, 1.0, {0.5 * e.omega_p(), 5e13});
    FAIL("no throw");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::BandOutsideGrid);
  }
  CHECK_THROWS_AS(filtered_mean(*d, 1.0, {0.5 * e.omega_p(), 0.0}), Error);
  CHECK_THROWS_AS(filtered_snl(*e.single_section(), 0.0, {0.5 * e.omega_p(), 1e12}), Error);
}

TEST_CASE("filtered shot-noise reference") {
  SweepEngine e(RunConfig{});
  auto s = e.single_section();
  auto f = full_band(s->grid->signal);
  for (double G1 : {0.02, 1.0}) CHECK(rel(filtered_snl(*s, G1, f), snl_vacuum(*s, G1)) < 1e-9);
  CHECK(filtered_snl(*s, 1.0, {0.5 * e.omega_p(), 1e12}) > snl_vacuum(*s, 1.0));
}

TEST_CASE("filtering against gain") {
  RunConfig cfg;
  cfg.filter_half_width = kDefaultFilterHalfWidth;
  SweepEngine e(cfg);
  auto low = run_phase_sweep(e, 0.5);
  auto mid = run_phase_sweep(e, 1.0);
  auto high = run_phase_sweep(e, 5.0);
  REQUIRE(high.filtered_minimum());
  REQUIRE(mid.filtered_minimum());
  REQUIRE(low.filtered_minimum());
  CHECK(mid.filtered_minimum()->value < mid.minimum()->value);
  // in the CW model the advantage is gone by gamma = 5
  CHECK(high.filtered_minimum()->value > high.minimum()->value);
  CHECK(high.filtered_minimum()->value > low.filtered_minimum()->value);
  // far from the dark fringe the band hardly matters
  std::size_t i = 100;
  CHECK(rel(high.filtered[i].normalized, high.rows[i].normalized) < 0.1);
}
