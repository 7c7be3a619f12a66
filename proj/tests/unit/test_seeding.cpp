#include <doctest.h>

#include <cmath>
#include <vector>

#include "su11/error.hpp"
#include "su11/seeding.hpp"
#include "su11/sweep.hpp"
#include "support.hpp"

using namespace su11;
using su11::test::rel;

namespace {

double sinh2(double x) { return std::pow(std::sinh(x), 2); }
double cosh2(double x) { return std::pow(std::cosh(x), 2); }

const std::vector<double> kL{0.5, 0.3, 0.15, 0.05};

}  // namespace

TEST_CASE("single photon seed at zero gain") {
  auto m = direct_single_photon_moments(kL, 0.0, 0);
  CHECK(m.mean == 1.0);
  CHECK(m.variance == 0.0);
  CHECK(snl_single_photon(kL, 1e-9) == doctest::Approx(1.0));
}

TEST_CASE("single photon moments") {
  const double G = 1.2;
  auto m = direct_single_photon_moments(kL, G, 1);
  double g1 = G * std::sqrt(kL[1]);
  CHECK(m.mean == doctest::Approx(mean_photons_vacuum(kL, G) + 1 + sinh2(g1)));
  double v = 0;
  for (double l : kL) v += sinh2(G * std::sqrt(l)) * cosh2(G * std::sqrt(l));
  CHECK(m.variance == doctest::Approx(v + sinh2(g1) * cosh2(g1)));
}

TEST_CASE("coherent seed moments") {
  const double G = 0.9;
  auto zero = direct_coherent_moments(kL, G, 0, 0.0);
  CHECK(zero.mean == doctest::Approx(mean_photons_vacuum(kL, G)));
  CHECK(zero.variance == doctest::Approx(variance_vacuum(kL, G)));
  auto m = direct_coherent_moments(kL, G, 0, 100.0);
  double g1 = G * std::sqrt(kL[0]);
  CHECK(m.mean == doctest::Approx(mean_photons_vacuum(kL, G) + 100 * cosh2(g1)));
  CHECK(m.variance >= zero.variance);
  auto g0 = direct_coherent_moments(kL, 0.0, 0, 100.0);
  CHECK(g0.mean == doctest::Approx(100.0));
  CHECK(g0.variance == doctest::Approx(100.0));
}

TEST_CASE("homodyne moments") {
  auto q = homodyne_first_mode_moments(kL, 1.0, 0, 50.0, kPi / 2, 3.0);
  CHECK(std::abs(q.mean) < 1e-12);
  auto a = homodyne_first_mode_moments(kL, 1.0, 0, 50.0, 0.0, 1.0);
  auto b = homodyne_first_mode_moments(kL, 1.0, 0, 50.0, 0.0, 7.0);
  // normalized sensitivity does not depend on the local oscillator amplitude
  CHECK(std::sqrt(a.variance) / a.mean == doctest::Approx(std::sqrt(b.variance) / b.mean).epsilon(1e-10));

  std::vector<double> p{0.01, 0.02, 0.0, 0.005};
  auto pw = homodyne_plane_wave_moments(kL, p, 0.0, 25.0, 0.0, 1.0);
  CHECK(pw.mean == doctest::Approx(10.0));
  CHECK(pw.variance == doctest::Approx(1.0));
}

TEST_CASE("seeding validation") {
  CHECK_NOTHROW(validate_seeding({}, {}));
  CHECK_THROWS_AS(validate_seeding({SeedKind::CoherentFirstMode, -1.0}, {}), Error);
  CHECK_THROWS_AS(validate_seeding({SeedKind::Vacuum, 1.0}, {DetectionKind::Homodyne, 0.0, 1.0}), Error);
  CHECK_THROWS_AS(validate_seeding({SeedKind::CoherentFirstMode, 1.0}, {DetectionKind::Homodyne, 0.0, 0.0}), Error);
  CHECK_THROWS_AS(validate_seeding({SeedKind::CoherentFirstMode, 1.0}, {DetectionKind::Homodyne, 7.0, 1.0}), Error);
  CHECK_THROWS_AS(validate_seeding({SeedKind::CoherentPlaneWave, 1.0}, {}), Error);
  CHECK_NOTHROW(validate_seeding({SeedKind::CoherentPlaneWave, 1.0}, {DetectionKind::Homodyne, 0.0, 1.0}));
}

TEST_CASE("asymptote forms") {
  for (double g : {0.5, 2.0}) {
    for (double phi : {1.0, 2.5}) {
      double a = coherent_direct_asymptote_sq(g, phi);
      CHECK(coherent_direct_asymptote_sq_x4(g, phi) == doctest::Approx(4 * a));
      double ref = (1 + std::pow(1 / std::tanh(g * std::cos(phi / 2)), 2)) * cosh2(g / 2) / (g * g * std::pow(std::sin(phi / 2), 2));
      CHECK(a == doctest::Approx(ref));
    }
  }
}

TEST_CASE("centre weights") {
  SweepEngine e(test::pulsed_config(64));
  auto d = e.decomposition(0.0);
  auto p = center_weights(*d);
  REQUIRE(p.size() == d->size());
  const auto& ax = d->grid->signal;
  std::size_t c = ax.nearest(ax.center);
  for (std::size_t k = 0; k < 3; ++k) CHECK(p[k] == doctest::Approx(std::norm(d->signal.value(k, c)) * ax.weights[c]));
  for (double v : p) CHECK(v >= 0.0);
}

TEST_CASE("seeded sweeps do not beat vacuum at low gain") {
  for (double gamma : {0.1, 0.5}) {
    RunConfig vac;
    auto v = run_phase_sweep(vac, gamma).minimum();
    RunConfig seeded;
    seeded.seed = {SeedKind::CoherentFirstMode, 1e6};
    auto s = run_phase_sweep(seeded, gamma).minimum();
    REQUIRE(v);
    REQUIRE(s);
    CHECK(s->value > v->value);
  }
}

TEST_CASE("single photon seed reference is one photon at low gain") {
  RunConfig cfg;
  cfg.phi_count = 33;
  cfg.seed = {SeedKind::SinglePhotonFirstMode, 0.0};
  auto r = run_phase_sweep(cfg, 0.01);
  for (const auto& row : r.rows) CHECK(row.dphi_snl == doctest::Approx(1.0).epsilon(2e-3));
  CHECK(r.minimum());
}
