#include <doctest.h>

#include <atomic>
#include <cmath>
#include <stdexcept>

#include "su11/error.hpp"
#include "su11/parallel.hpp"
#include "su11/sweep.hpp"
#include "support.hpp"

using namespace su11;

TEST_CASE("phase grid") {
  RunConfig cfg;
  cfg.phi_count = 33;
  SweepEngine e(cfg);
  auto p = e.phases();
  REQUIRE(p.size() == 33);
  CHECK(p.front() == 0.0);
  CHECK(p.back() == kTwoPi);
  CHECK(e.periodic());
  cfg.phi_stop = kPi;
  CHECK_FALSE(SweepEngine(cfg).periodic());
}

TEST_CASE("decompositions are memoised per canonical phase") {
  SweepEngine e(test::pulsed_config(32));
  auto a = e.decomposition(1.0);
  auto b = e.decomposition(1.0 + kTwoPi);
  CHECK(a.get() == b.get());
  CHECK(e.cache_size() == 1);
  std::vector<double> phis{0.5, 1.0, 0.5, 2.0};
  auto d = e.decompositions(phis);
  CHECK(d[0].get() == d[2].get());
  CHECK(d[1].get() == a.get());
  CHECK(e.cache_size() == 3);
  CHECK(e.single_section().get() == e.single_section().get());
}

TEST_CASE("sweeps are deterministic") {
  RunConfig cfg;
  cfg.phi_count = 65;
  auto a = run_phase_sweep(cfg, 1.3);
  auto b = run_phase_sweep(cfg, 1.3);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].N == b.rows[i].N);
    CHECK(a.rows[i].varN == b.rows[i].varN);
  }
  CHECK(a.meta.config_hash == b.meta.config_hash);
}

TEST_CASE("parallel_for runs every index once and rethrows the lowest failure") {
  std::vector<std::atomic<int>> hits(200);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, 4);
  for (auto& h : hits) CHECK(h.load() == 1);

  for (int rep = 0; rep < 5; ++rep) {
    try {
      parallel_for(64, [](std::size_t i) {
        if (i == 7 || i == 40 || i == 63) throw std::runtime_error(std::to_string(i));
      }, 4);
      FAIL("no throw");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
  parallel_for(0, [](std::size_t) { FAIL("called"); });
}

TEST_CASE("first-mode tracking") {
  RunConfig cfg = test::pulsed_config(64);
  cfg.phi_count = 33;
  cfg.seed = {SeedKind::CoherentFirstMode, 1e6};
  auto r = run_phase_sweep(cfg, 1.0);
  REQUIRE(r.first_mode.size() == 33);
  CHECK(r.first_mode.front() == 0);

  SweepEngine e(test::pulsed_config(64));
  std::vector<double> far{0.0, kPi};
  auto decs = e.decompositions(far);
  // an orthogonal jump: pretend the first mode of phase 0 is followed by a mode it does not overlap
  std::vector<DecompositionPtr> pair{decs[0], decs[0]};
  CHECK(track_first_mode(pair, TrackingPolicy::Overlap) == std::vector<std::size_t>{0, 0});
  auto shifted = std::make_shared<SchmidtDecomposition>(*decs[0]);
  Eigen::MatrixXcd m(64, 2);
  m.setZero();
  m(0, 0) = 1.0 / std::sqrt(shifted->grid->signal.weights[0]);
  m(63, 1) = 1.0 / std::sqrt(shifted->grid->signal.weights[63]);
  shifted->signal = ModeBasis::dense(m);
  shifted->eigenvalues = {0.6, 0.4};
  std::vector<DecompositionPtr> bad{decs[0], shifted};
  try {
    track_first_mode(bad, TrackingPolicy::Overlap);
    FAIL("no throw");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::ModeTrackingLost);
  }
  CHECK(track_first_mode(bad, TrackingPolicy::Argmax) == std::vector<std::size_t>{0, 0});
}

TEST_CASE("refined configuration") {
  RunConfig cw;
  CHECK(refined(cw).subsamples == 2);
  auto p = test::pulsed_config(128);
  CHECK(refined(p).points == 255);
}

TEST_CASE("convergence gate reports both resolutions") {
  RunConfig toy = test::pulsed_config(128);
  toy.dispersion = test::toy_json();
  auto good = convergence_gate(toy, 1.3);
  CHECK(good.passed);
  CHECK(good.max_drift < good.threshold);
  CHECK(good.coarse_resolution.find("128") != std::string::npos);
  CHECK(good.fine_resolution.find("255") != std::string::npos);
  CHECK(good.probes.size() == 12);

  toy.points = 16;
  auto bad = convergence_gate(toy, 1.3);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_drift > bad.threshold);
  CHECK(bad.summary().find("NOT converged") != std::string::npos);
  CHECK(bad.summary().find("16x16") != std::string::npos);
  CHECK(bad.summary().find("31x31") != std::string::npos);
}

TEST_CASE("gain sweep") {
  SweepEngine e(RunConfig{});
  std::vector<double> g{0.04, 1.0, 4.0};
  auto r = run_gain_sweep(e, g);
  REQUIRE(r.points.size() == 3);
  for (const auto& p : r.points) {
    REQUIRE(p.minimum);
    CHECK(p.trend == doctest::Approx(high_gain_trend(p.gamma)));
  }
  CHECK(r.points[0].N0 < r.points[1].N0);
  CHECK(r.points[1].N0 < r.points[2].N0);
  CHECK(r.points[0].minimum->value < r.points[2].minimum->value);
}
