#include <doctest.h>

#include <bit>
#include <cmath>

#include <Eigen/Dense>

#include "su11/error.hpp"
#include "su11/phasematch.hpp"
#include "support.hpp"

using namespace su11;
using su11::test::rel;

TEST_CASE("pump envelope") {
  double wp = test::omega_p();
  auto p = PumpSpec::pulsed(wp, 0.35e-12);
  CHECK(pump_envelope(p, 0.4 * wp, 0.6 * wp) == 1.0);
  CHECK(pump_envelope(p, 0.5 * wp + 0.5 / p.tau, 0.5 * wp + 0.5 / p.tau) == doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
  double det = kTwoPi * 0.5e12;
  CHECK(pump_envelope(p, 0.5 * wp + det, 0.5 * wp) == doctest::Approx(0.5463402823767797).epsilon(1e-13));
  CHECK(pump_envelope(p, 0.5 * wp + det, 0.5 * wp) == doctest::Approx(std::exp(-0.5 * std::pow(det * 0.35e-12, 2))).epsilon(1e-12));
  for (double d : {-3e13, -1e12, 1e11, 2e13}) CHECK(pump_envelope(p, 0.5 * wp + d, 0.5 * wp) < 1.0);
  CHECK_THROWS_AS(pump_envelope(PumpSpec::cw(wp), 0.5 * wp, 0.5 * wp), Error);
  CHECK_THROWS_AS(PumpSpec::pulsed(wp, 0.0), Error);
  CHECK_NOTHROW(PumpSpec::pulsed(wp, 1e-12).validate(test::ktp()));
  CHECK_THROWS_AS(PumpSpec::cw(3 * test::ktp().window().max).validate(test::ktp()), Error);
}

TEST_CASE("phase mismatch at and near degeneracy") {
  auto m = test::ktp();
  double wp = test::omega_p(), c = 0.5 * wp;
  double L = poling_period(m, 766e-9);
  CHECK(std::abs(delta_beta(m, L, c, c)) < 1e-10);
  CHECK(std::abs(delta_beta_bar(m, L, c, c)) < 1e-10);

  double slope = 1.0 / group_velocity(m, Polarization::Extraordinary, c) - 1.0 / group_velocity(m, Polarization::Ordinary, c);
  for (double f : {1e-5, 1e-4, 5e-4, 1e-3}) {
    double W = f * c;
    for (double s : {-1.0, 1.0}) {
      double db = delta_beta(m, L, c + s * W, c - s * W);
      CHECK(rel(db, s * W * slope) < 0.01);
      double dbb = delta_beta_bar(m, L, c + s * W, c - s * W);
      CHECK(std::abs(db + dbb) < 0.01 * std::abs(db));
    }
  }
}

TEST_CASE("swapped mismatch is the mismatch with arguments exchanged") {
  auto m = test::ktp();
  double L = poling_period(m, 766e-9), c = 0.5 * test::omega_p();
  for (double a : {-2e13, -3e12, 0.0, 7e12})
    for (double b : {-1e13, 0.0, 4e12}) CHECK(delta_beta_bar(m, L, c + a, c + b) == delta_beta(m, L, c + b, c + a));
}

TEST_CASE("mismatch sum is second order in the detuning") {
  auto m = test::ktp();
  double L = poling_period(m, 766e-9), c = 0.5 * test::omega_p();
  const int n = 41;
  Eigen::MatrixXd A(n, 2);
  Eigen::VectorXd y(n), d(n);
  for (int k = 0; k < n; ++k) {
    double W = 2e13 * (k - 20) / 20.0;
    A(k, 0) = W;
    A(k, 1) = W * W;
    y(k) = delta_beta(m, L, c + W, c - W) + delta_beta_bar(m, L, c + W, c - W);
    d(k) = delta_beta(m, L, c + W, c - W);
  }
  Eigen::Vector2d fit = A.colPivHouseholderQr().solve(y);
  Eigen::Vector2d lin = A.colPivHouseholderQr().solve(d);
  CHECK(std::abs(fit(0)) < 1e-3 * std::abs(lin(0)));
  CHECK(std::abs(fit(1)) > 0);
}

TEST_CASE("mismatch is a pure function") {
  auto m = test::ktp();
  double L = poling_period(m, 766e-9), c = 0.5 * test::omega_p();
  double a = delta_beta(m, L, c + 1.234e12, c - 0.5e12);
  double b = delta_beta(m, L, c + 1.234e12, c - 0.5e12);
  CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b));
  CHECK_THROWS_AS(delta_beta(m, L, 1e13, 1e13), Error);
}

TEST_CASE("modulator phase") {
  double c = 0.5 * test::omega_p();
  CHECK(modulator_phase(ModulatorSpec(kPi, 0.0, c), c + 3e12) == kPi);
  CHECK(modulator_phase(ModulatorSpec(0.0, 0.0, c), c - 1e13) == 0.0);
  CHECK(modulator_phase(ModulatorSpec(0.0, 1e-13, c), c - 1e13) == 0.0);
  double s = 2e-14, D = 5e12;
  CHECK(modulator_phase(ModulatorSpec(kPi / 2, s, c), c + D) == doctest::Approx(kPi / 2 * (1 + s * D)).epsilon(1e-15));
  CHECK(ModulatorSpec(-kPi / 2, 0, c).phi == doctest::Approx(1.5 * kPi));
  CHECK(ModulatorSpec(kTwoPi, 0, c).phi == 0.0);
  CHECK(ModulatorSpec(5 * kPi, 0, c).phi == doctest::Approx(kPi));
  CHECK_THROWS_AS(ModulatorSpec(0.0, std::nan(""), c), Error);
  CHECK_THROWS_AS(canonical_phase(INFINITY), Error);
}

TEST_CASE("sinc") {
  CHECK(sinc(0.0) == 1.0);
  CHECK(sinc(1e-9) == doctest::Approx(1.0));
  CHECK(sinc(1e-5) == doctest::Approx(std::sin(1e-5) / 1e-5).epsilon(1e-15));
  CHECK(std::abs(sinc(kPi)) < 1e-15);
  CHECK(sinc(-2.0) == sinc(2.0));
}

TEST_CASE("geometry validation") {
  DeviceGeometry g;
  g.poling_period = 45e-6;
  CHECK_NOTHROW(g.validate());
  g.gap = 0.0;
  CHECK_NOTHROW(g.validate());
  g.gap = -1e-3;
  CHECK_THROWS_AS(g.validate(), Error);
  g.gap = 1e-3;
  g.length = 0;
  CHECK_THROWS_AS(g.validate(), Error);
  g.length = 8e-3;
  g.poling_period = 0;
  CHECK_THROWS_AS(g.validate(), Error);
}
