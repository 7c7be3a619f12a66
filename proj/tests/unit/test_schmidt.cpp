#include <doctest.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "su11/error.hpp"
#include "su11/grid.hpp"
#include "su11/jsa.hpp"
#include "su11/oracles.hpp"
#include "su11/schmidt.hpp"
#include "su11/sweep.hpp"
#include "support.hpp"

using namespace su11;
using su11::test::rel;

namespace {

JointSpectralAmplitude from_function(double c, double hw, std::size_t n, auto&& f) {
  JointSpectralAmplitude j;
  j.grid = build_grid(c, hw, n, n);
  j.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      j.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = f(j.grid.signal.nodes[a] - c, j.grid.idler.nodes[b] - c);
  normalize(j);
  return j;
}

JointSpectralAmplitude double_gaussian(double tau, double sigma, double hw = 3e13, std::size_t n = 192) {
  return from_function(1.2e15, hw, n, [&](double x, double y) {
    return cplx(std::exp(-0.5 * (x + y) * (x + y) * tau * tau - 0.5 * (x - y) * (x - y) / (sigma * sigma)), 0.0);
  });
}

double max_gram_error(const ModeBasis& b, std::span<const double> w) {
  Eigen::MatrixXcd g = b.gram(w);
  g -= Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("separable amplitude has one mode") {
  auto j = from_function(1.2e15, 2e13, 96, [](double x, double y) {
    return cplx(std::exp(-x * x / (2 * 4e24)) * std::exp(-y * y / (2 * 4e24)), 0.0);
  });
  auto d = schmidt_decompose(j, 8);
  CHECK(d.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(schmidt_number(d, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("double Gaussian matches the Mehler spectrum") {
  for (auto [tau, sigma] : {std::pair{1e-12, 3e12}, std::pair{1e-12, 1.5e12}, std::pair{1e-12, 6e12}}) {
    double hw = sigma > 5e12 ? 4e13 : 3e13;
    auto d = schmidt_decompose(double_gaussian(tau, sigma, hw, 256), 8);
    auto ref = oracle::mehler_eigenvalues(tau, sigma, 5);
    for (std::size_t k = 0; k < 5; ++k) CHECK(std::abs(d.eigenvalues[k] - ref[k]) < 1e-4);
  }
}

TEST_CASE("first Mehler mode is Gaussian") {
  const double tau = 1e-12, sigma = 3e12;
  auto d = schmidt_decompose(double_gaussian(tau, sigma), 4);
  // ground mode of exp(-a(x^2+y^2) - 2bxy) is exp(-sqrt(a^2-b^2) x^2)
  double a = 0.5 * tau * tau + 0.5 / (sigma * sigma), b = 0.5 * tau * tau - 0.5 / (sigma * sigma);
  double c = std::sqrt(a * a - b * b);
  const auto& x = d.grid->signal.nodes;
  double num = 0, den1 = 0, den2 = 0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    double u = std::abs(d.signal.value(0, n));
    double g = std::exp(-c * std::pow(x[n] - 1.2e15, 2));
    num += u * g;
    den1 += u * u;
    den2 += g * g;
  }
  CHECK(num / std::sqrt(den1 * den2) > 0.9999);
}

TEST_CASE("decomposition invariants on a device amplitude") {
  RunConfig cfg = test::pulsed_config(128);
  SweepEngine e(cfg);
  for (double phi : {0.0, kPi / 2, kPi}) {
    auto d = e.decomposition(phi);
    CHECK(std::is_sorted(d->eigenvalues.rbegin(), d->eigenvalues.rend()));
    CHECK(d->eigenvalues.back() >= 0);
    double s = std::accumulate(d->eigenvalues.begin(), d->eigenvalues.end(), 0.0);
    CHECK(std::abs(s - 1.0) < 1e-6);
    CHECK(max_gram_error(d->signal, d->grid->signal.weights) < 1e-8);
    CHECK(max_gram_error(d->idler, d->grid->idler.weights) < 1e-8);
    CHECK(d->reconstruction_error < 1e-6);
    CHECK_FALSE(d->truncation_warning);
  }
}

TEST_CASE("gauge: first signal mode is real and positive at its largest node") {
  SweepEngine e(test::pulsed_config(64));
  auto jsa = e.build_jsa(1.0);
  auto a = schmidt_decompose(jsa, 16);
  auto b = schmidt_decompose(jsa, 16);
  for (std::size_t k = 0; k < 16; ++k) {
    // near-degenerate mirror peaks: accept any node within rounding of the maximum
    auto u = a.signal.mode(k);
    const auto& w = jsa.grid.signal.weights;
    double top = 0;
    for (Eigen::Index n = 0; n < u.size(); ++n) top = std::max(top, std::abs(u(n)) * std::sqrt(w[n]));
    bool gauged = false;
    for (Eigen::Index n = 0; n < u.size(); ++n)
      if (std::abs(u(n)) * std::sqrt(w[n]) >= top * (1 - 1e-12))
        gauged = gauged || (std::abs(u(n).imag()) < 1e-12 * std::abs(u(n)) && u(n).real() > 0);
    CHECK(gauged);
    for (std::size_t n = 0; n < 64; n += 7) {
      CHECK(std::bit_cast<std::uint64_t>(a.signal.value(k, n).real()) == std::bit_cast<std::uint64_t>(b.signal.value(k, n).real()));
      CHECK(std::bit_cast<std::uint64_t>(a.idler.value(k, n).imag()) == std::bit_cast<std::uint64_t>(b.idler.value(k, n).imag()));
    }
  }
}

TEST_CASE("antidiagonal route agrees with a dense SVD of the embedded matrix") {
  RunConfig cfg;
  cfg.half_width = 2e12;
  SweepEngine e(cfg);
  for (double phi : {0.0, 2.0, kPi}) {
    auto cw = e.build_jsa(phi);
    auto point = schmidt_decompose(cw, kAllModes);
    JointSpectralAmplitude dense = cw;
    dense.layout = JsaLayout::Dense;
    dense.values = cw.dense();
    auto full = schmidt_decompose(dense, kAllModes);
    REQUIRE(point.size() == cw.grid.signal.size());
    for (std::size_t k = 0; k < 20; ++k) CHECK(std::abs(point.eigenvalues[k] - full.eigenvalues[k]) < 1e-12);
    // same first mode up to a phase
    auto t = std::abs(ModeBasis::inner(point.signal, 0, full.signal, 0, cw.grid.signal.weights));
    if (point.eigenvalues[0] - point.eigenvalues[1] > 1e-9) CHECK(t == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("truncation is reported") {
  auto j = double_gaussian(1e-12, 6e12, 4e13, 128);
  auto d = schmidt_decompose(j, 2);
  CHECK(d.size() == 2);
  CHECK(d.tail_mass > kTruncationWarning);
  CHECK(d.truncation_warning);
  CHECK(d.reconstruction_error > 1e-3);
  CHECK(std::abs(d.eigenvalues[0] + d.eigenvalues[1] + d.tail_mass - 1.0) < 1e-12);
}

TEST_CASE("unnormalized input is rejected") {
  JointSpectralAmplitude j;
  j.grid = build_grid(1.2e15, 1e13, 16, 16);
  j.values = Eigen::MatrixXcd::Ones(16, 16);
  CHECK_THROWS_AS(schmidt_decompose(j), Error);
}

TEST_CASE("compensated CW spectrum flattens near pi") {
  SweepEngine e(RunConfig{});
  double k0 = schmidt_number(*e.decomposition(0.0), 0.0);
  double kpi = schmidt_number(*e.decomposition(kPi), 0.0);
  CHECK(kpi >= 3 * k0);
}

TEST_CASE("gain calibration") {
  SweepEngine e(RunConfig{});
  auto d0 = e.decomposition(0.0);
  for (double g : {0.04, 1.3, 10.0}) {
    auto cal = calibrate_gain(*d0, g);
    CHECK(cal.gain(d0->raw_norm) * std::sqrt(d0->eigenvalues[0]) == doctest::Approx(g).epsilon(1e-14));
  }
  SchmidtDecomposition z = *d0;
  z.raw_norm = 0.0;
  CHECK_THROWS_AS(calibrate_gain(z, 1.0), Error);
  CHECK_THROWS_AS(calibrate_gain(*d0, -1.0), Error);
}

TEST_CASE("Schmidt number") {
  std::vector<double> one{1.0};
  for (double G : {0.0, 0.5, 10.0, 100.0}) CHECK(schmidt_number(one, G) == doctest::Approx(1.0));
  std::vector<double> flat(7, 1.0 / 7);
  for (double G : {0.0, 0.3, 3.0, 30.0}) CHECK(schmidt_number(flat, G) == doctest::Approx(7.0).epsilon(1e-12));
  std::vector<double> two{0.6, 0.4};
  CHECK(schmidt_number(two, 0.0) == doctest::Approx(1.0 / (0.36 + 0.16)));
  CHECK(schmidt_number(two, 1e-6) == doctest::Approx(1.0 / (0.36 + 0.16)).epsilon(1e-9));
  CHECK(schmidt_number(two, 20.0) < 1.2);
  CHECK(schmidt_number(two, 2000.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(schmidt_number(two, -1.0), Error);
}

TEST_CASE("eigenvalues vary continuously with phase") {
  SweepEngine e(test::pulsed_config(96));
  for (double phi : {0.3, 1.2, 2.2, 2.8}) {
    auto a = e.decomposition(phi), b = e.decomposition(phi + 0.01);
    auto t = track_mode(a->signal, 0, b->signal, b->grid->signal.weights);
    CHECK(t.overlap > 0.9);
    CHECK(rel(b->eigenvalues[t.index], a->eigenvalues[0]) < 0.05);
  }
}

TEST_CASE("mode tracking on point bases") {
  auto a = ModeBasis::point(5, {2, 0, 4}, {cplx(1, 0), cplx(0, 1), cplx(1, 0)});
  auto b = ModeBasis::point(5, {0, 4, 2}, {cplx(1, 0), cplx(1, 0), cplx(-1, 0)});
  std::vector<double> w(5, 1.0);
  auto t = track_mode(a, 0, b, w);
  CHECK(t.index == 2);
  CHECK(t.overlap == doctest::Approx(1.0));
  CHECK(a.mode_at(4) == 2);
  CHECK(a.mode_at(3) == a.count());
  CHECK(a.node_of(1) == 0);
}
