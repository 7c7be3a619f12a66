#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <unistd.h>

#include "su11/acceptance.hpp"
#include "su11/error.hpp"
#include "su11/io.hpp"
#include "su11/oracles.hpp"
#include "su11/sweep.hpp"
#include "su11/units.hpp"

namespace su11::validation {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

template <class Body>
CriterionResult run(int id, std::string title, std::string anchor, const Options& opt, Body body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.anchor = std::move(anchor);
  if (opt.progress) opt.progress(fmt("criterion %d: %s", id, r.title.c_str()));
  auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = since(t0);
  return r;
}

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::size_t nearest_index(std::span<const double> xs, double x) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (std::abs(xs[i] - x) < std::abs(xs[best] - x)) best = i;
  return best;
}

std::size_t supersensitive_count(std::span<const ObservableSet> rows) {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const ObservableSet& o) { return std::isfinite(o.normalized) && o.normalized < 1.0; }));
}

double vacuum_photons(SweepEngine& e, double gamma, double phi) {
  auto d0 = e.decomposition(0.0);
  auto cal = calibrate_gain(*d0, gamma);
  auto d = e.decomposition(phi);
  return mean_photons_vacuum(*d, cal.gain(d->raw_norm));
}

nlohmann::json toy_dispersion() {
  return {{"ordinary", {{"type", "constant"}, {"n", 1.8}}}, {"extraordinary", {{"type", "constant"}, {"n", 1.9}}}};
}

}  // namespace

// Frozen bounds on raw_norm(phi)/raw_norm(0). The non-compensated device measured above 0.9999
// in both regimes; the compensated CW device measured 0.016 at phi = pi.
inline constexpr double kNonCompensatedFloor = 0.05;
inline constexpr double kCompensatedNullCeiling = 0.05;

CriterionResult low_gain_floor(const Options& opt) {
  return run(1, "low-gain sensitivity floor", "low-gain envelope 1/(2 sin(phi/2)), floor 0.5 as phi -> pi", opt,
             [&](CriterionResult& r) {
               auto t0 = Clock::now();
               SweepEngine e(opt.base);
               auto res = run_phase_sweep(e, 0.04);
               double secs = since(t0);
               auto mn = res.minimum();
               if (!mn) fail(ErrorCode::AllInfinite, "no finite sensitivity at gamma=0.04");
               r.checks.push_back({fmt("gamma=0.04: min normalized dphi = %.5f at phi = %.4f (target 0.5 +- 5%%)", mn->value, mn->phi),
                                   std::abs(mn->value - 0.5) <= 0.025});
               double worst = 0.0, at = 0.0;
               std::size_t n = 0;
               for (const auto& row : res.rows) {
                 if (row.phi < kPi / 2 - 1e-12 || row.phi > kPi - 0.1 + 1e-12 || !std::isfinite(row.normalized)) continue;
                 double d = std::abs(row.normalized / asymptote_low_gain(row.phi) - 1.0);
                 ++n;
                 if (d > worst) worst = d, at = row.phi;
               }
               r.checks.push_back({fmt("max deviation from 1/(2 sin(phi/2)) on [pi/2, pi-0.1]: %.3f%% at phi = %.4f over %zu points (limit 5%%)",
                                       100 * worst, at, n),
                                   n > 0 && worst <= 0.05});
               r.checks.push_back({fmt("sweep wall time %.2f s for %zu phases on %zu spectral nodes (limit 120 s)", secs,
                                       res.rows.size(), e.grid().signal.size()),
                                   secs < 120.0});
             });
}

CriterionResult gain_trend(const Options& opt) {
  return run(2, "high-gain trend", "high-gain envelope sinh(gamma/2)/gamma", opt, [&](CriterionResult& r) {
    auto t0 = Clock::now();
    SweepEngine e(opt.base);
    double prev = -1.0;
    bool monotone = true;
    std::string seq;
    for (double g : {1.3, 2.5, 5.0, 10.0}) {
      auto res = run_phase_sweep(e, g);
      auto mn = res.minimum();
      if (!mn) fail(ErrorCode::AllInfinite, fmt("no finite sensitivity at gamma=%g", g));
      double trend = su11::high_gain_trend(g);
      double ratio = mn->value / trend;
      r.checks.push_back({fmt("gamma=%-4g min = %.4f, sinh(gamma/2)/gamma = %.4f, ratio %.3f (within [0.5, 2])", g, mn->value,
                              trend, ratio),
                          ratio >= 0.5 && ratio <= 2.0});
      if (!(mn->value > prev)) monotone = false;
      prev = mn->value;
      seq += fmt("%s%.4f", seq.empty() ? "" : " < ", mn->value);
    }
    r.checks.push_back({"minima increase with gain: " + seq, monotone});
    double secs = since(t0);
    r.checks.push_back({fmt("wall time %.2f s (limit 600 s)", secs), secs < 600.0});
  });
}

CriterionResult interference_contrast(const Options& opt) {
  return run(3, "destructive-interference contrast", "cos(phi/2) null of the compensated device; no null without compensation",
             opt, [&](CriterionResult& r) {
               SweepEngine e(opt.base);
               auto phis = e.phases();
               std::size_t ipi = nearest_index(phis, kPi);
               for (double g : {0.04, 1.3}) {
                 auto res = run_phase_sweep(e, g);
                 auto [lo, hi] = std::minmax_element(res.rows.begin(), res.rows.end(),
                                                     [](const auto& a, const auto& b) { return a.N < b.N; });
                 double V = (hi->N - lo->N) / (hi->N + lo->N);
                 std::size_t imin = static_cast<std::size_t>(lo - res.rows.begin());
                 r.checks.push_back({fmt("gamma=%g: visibility %.6f (limit > 0.95)", g, V), V > 0.95});
                 std::size_t off = imin > ipi ? imin - ipi : ipi - imin;
                 r.checks.push_back({fmt("gamma=%g: min N = %.4g at phi = %.4f, %zu step(s) from pi (limit 1)", g, lo->N, lo->phi, off),
                                     off <= 1});
               }
               {
                 RunConfig c = opt.base;
                 c.variant = DeviceVariant::Compensated;
                 c.regime = PumpRegime::CW;
                 SweepEngine n(c);
                 double q = n.build_jsa(kPi).raw_norm / n.build_jsa(0.0).raw_norm;
                 r.checks.push_back({fmt("compensated cw: raw_norm(pi)/raw_norm(0) = %.5f (limit < %.2f)", q, kCompensatedNullCeiling),
                                     q < kCompensatedNullCeiling});
               }
               for (auto regime : {PumpRegime::CW, PumpRegime::Pulsed}) {
                 RunConfig c = opt.base;
                 c.variant = DeviceVariant::NonCompensated;
                 c.regime = regime;
                 SweepEngine n(c);
                 double r0 = n.build_jsa(0.0).raw_norm;
                 double floor = std::numeric_limits<double>::infinity(), at = 0.0;
                 for (int i = 0; i <= 200; ++i) {
                   double phi = kTwoPi * i / 200.0;
                   double q = n.build_jsa(phi).raw_norm / r0;
                   if (q < floor) floor = q, at = phi;
                 }
                 r.checks.push_back({fmt("non-compensated %s: min raw_norm(phi)/raw_norm(0) = %.6f at phi = %.3f (floor %.2f)",
                                         to_string(regime), floor, at, kNonCompensatedFloor),
                                     floor > kNonCompensatedFloor});
               }
             });
}

CriterionResult photon_number_anchors(const Options& opt) {
  return run(4, "photon-number anchors", "stated photon numbers at phi=0 (loose: bulk dispersion model, not the waveguide)", opt,
             [&](CriterionResult& r) {
               SweepEngine e(opt.base);
               double n1 = vacuum_photons(e, 0.04, 0.0);
               r.checks.push_back({fmt("gamma=0.04: <N(0)> = %.5f (target 0.12 +- 30%%)", n1), n1 >= 0.084 && n1 <= 0.156});
               double n2 = vacuum_photons(e, 10.0, 0.0);
               r.checks.push_back({fmt("gamma=10: <N(0)> = %.4g (target 1e9 within one decade)", n2), n2 >= 1e8 && n2 <= 1e10});
             });
}

CriterionResult filtering_improvement(const Options& opt) {
  return run(5, "filtering improvement", "rectangular signal filter of half-width 2.855e12 rad/s", opt, [&](CriterionResult& r) {
    RunConfig c = opt.base;
    c.filter_half_width = kDefaultFilterHalfWidth;
    SweepEngine e(c);
    auto res = run_phase_sweep(e, 2.5);
    auto um = res.minimum();
    auto fm = res.filtered_minimum();
    if (!um || !fm) fail(ErrorCode::AllInfinite, "no finite sensitivity at gamma=2.5");
    r.checks.push_back({fmt("gamma=2.5: filtered min %.5f vs unfiltered %.5f (strictly smaller)", fm->value, um->value),
                        fm->value < um->value});
    double step = (c.phi_stop - c.phi_start) / static_cast<double>(c.phi_count - 1);
    std::size_t nu = supersensitive_count(res.rows), nf = supersensitive_count(res.filtered);
    r.checks.push_back({fmt("supersensitive width: filtered %.4f rad (%zu pts) vs unfiltered %.4f rad (%zu pts)", nf * step, nf,
                            nu * step, nu),
                        nf > nu});

    RunConfig full = opt.base;
    {
      SweepEngine probe(opt.base);
      full.filter_half_width = probe.grid().signal.extent_hi() - 0.5 * probe.omega_p();
    }
    SweepEngine ef(full);
    auto rf = run_phase_sweep(ef, 2.5);
    double dN = 0.0, dV = 0.0;
    for (std::size_t i = 0; i < rf.rows.size(); ++i) {
      dN = std::max(dN, relative(rf.filtered[i].N, rf.rows[i].N));
      dV = std::max(dV, relative(rf.filtered[i].varN, rf.rows[i].varN));
    }
    r.checks.push_back({fmt("full-band filter: max relative change in N %.2e, in var N %.2e (limit 1e-8)", dN, dV),
                        dN <= 1e-8 && dV <= 1e-8});
  });
}

CriterionResult seeding_no_gain(const Options& opt) {
  return run(6, "seeding gives no supersensitivity",
             "coherent-seed direct-detection asymptote (1+coth^2(gamma cos(phi/2))) cosh^2(gamma/2)/(gamma^2 sin^2(phi/2))", opt,
             [&](CriterionResult& r) {
               struct Setup {
                 const char* name;
                 SeedKind seed;
                 DetectionKind det;
               };
               const Setup setups[] = {{"coherent seed, direct", SeedKind::CoherentFirstMode, DetectionKind::Direct},
                                       {"coherent seed, homodyne", SeedKind::CoherentFirstMode, DetectionKind::Homodyne},
                                       {"plane-wave seed, homodyne", SeedKind::CoherentPlaneWave, DetectionKind::Homodyne}};
               double worst = 0.0, worst_phi = 0.0, worst_gamma = 0.0, x4 = 0.0;
               std::size_t compared = 0;
               for (const auto& s : setups) {
                 RunConfig c = opt.base;
                 c.seed = {s.seed, 1e6};
                 c.detection.kind = s.det;
                 SweepEngine e(c);
                 for (double g : {1.3, 2.5, 5.0}) {
                   auto res = run_phase_sweep(e, g);
                   auto mn = res.minimum();
                   double v = mn ? mn->value : kInfiniteSensitivity;
                   r.checks.push_back({fmt("%s, gamma=%g: min normalized dphi = %.4f (limit >= 1)", s.name, g, v), v >= 1.0});
                   if (s.det != DetectionKind::Direct) continue;
                   for (std::size_t i = 0; i < res.rows.size(); ++i) {
                     const auto& row = res.rows[i];
                     if (!(row.phi > 0.0 && row.phi < kPi) || !std::isfinite(row.normalized)) continue;
                     double nvac = mean_photons_vacuum(*e.decomposition(row.phi), res.gains[i]);
                     if (!(c.seed.alpha2 > 100.0 * nvac)) continue;
                     double ref = std::sqrt(coherent_direct_asymptote_sq(g, row.phi));
                     double d = std::abs(row.normalized / ref - 1.0);
                     ++compared;
                     if (d > worst) {
                       worst = d, worst_phi = row.phi, worst_gamma = g;
                       x4 = row.normalized / std::sqrt(coherent_direct_asymptote_sq_x4(g, row.phi));
                     }
                   }
                 }
               }
               r.checks.push_back({fmt("coherent direct vs asymptote: max deviation %.3f%% (gamma=%g, phi=%.4f) over %zu points "
                                       "where |alpha|^2 > 100 sum sinh^2 (limit 5%%); ratio to the form with an extra factor 4 "
                                       "there: %.3f",
                                       100 * worst, worst_gamma, worst_phi, compared, x4),
                                   compared > 0 && worst <= 0.05});
             });
}

CriterionResult single_photon_snl(const Options& opt) {
  return run(7, "single-photon seed", "single-photon reference 1/sqrt(1 + sum(2-delta_k1) sinh^2(G1 sqrt(eta_k)))", opt,
             [&](CriterionResult& r) {
               RunConfig c = opt.base;
               c.seed.kind = SeedKind::SinglePhotonFirstMode;
               c.detection.kind = DetectionKind::Direct;
               SweepEngine es(c);
               {
                 auto d0 = es.decomposition(0.0);
                 auto cal = calibrate_gain(*d0, 1e-3);
                 double G1 = c.snl_gain_ratio * cal.gain(d0->raw_norm);
                 double snl = snl_single_photon(es.single_section()->lambdas(), G1);
                 r.checks.push_back({fmt("gamma=1e-3: seeded SNL = %.8f (|SNL-1| < 1e-3)", snl), std::abs(snl - 1.0) < 1e-3});
               }
               RunConfig v = opt.base;
               v.seed.kind = SeedKind::Vacuum;
               v.detection.kind = DetectionKind::Direct;
               SweepEngine ev(v);
               for (double g : {0.04, 0.1, 0.2, 0.3, 0.45}) {
                 auto ms = run_phase_sweep(es, g).minimum();
                 auto mv = run_phase_sweep(ev, g).minimum();
                 if (!ms || !mv) fail(ErrorCode::AllInfinite, fmt("no finite sensitivity at gamma=%g", g));
                 r.checks.push_back({fmt("gamma=%g: seeded min %.4f vs vacuum min %.4f (seeded larger)", g, ms->value, mv->value),
                                     ms->value > mv->value});
               }
             });
}

CriterionResult oracle_equivalence(const Options& opt) {
  return run(8, "oracle equivalence", "two-mode squeezers per Schmidt pair; Mehler kernel for a double Gaussian", opt,
             [&](CriterionResult& r) {
               double worst = 0.0;
               std::size_t cases = 0;
               for (auto regime : {PumpRegime::CW, PumpRegime::Pulsed}) {
                 RunConfig c = opt.base;
                 c.regime = regime;
                 SweepEngine e(c);
                 auto d0 = e.decomposition(0.0);
                 for (double phi : {0.0, kPi / 2, 2 * kPi / 3}) {
                   auto d = e.decomposition(phi);
                   if (d->size() < 3) fail(ErrorCode::InvalidArgument, "fewer than three Schmidt modes");
                   std::span<const double> top = d->lambdas().first(3);
                   for (double g : {0.05, 0.3}) {
                     double G = calibrate_gain(*d0, g).gain(d->raw_norm);
                     std::vector<double> rk;
                     for (double l : top) rk.push_back(G * std::sqrt(l));
                     auto f = oracle::squeezed_pairs(rk, 12);
                     worst = std::max({worst, relative(mean_photons_vacuum(top, G), f.mean), relative(variance_vacuum(top, G), f.variance)});
                     ++cases;
                   }
                 }
               }
               r.checks.push_back({fmt("N and var N from 3 Schmidt modes vs Fock cutoff 12: max relative difference %.2e over %zu "
                                       "cases (limit 1e-4)",
                                       worst, cases),
                                   worst < 1e-4});

               struct Kernel {
                 double tau, sigma, half_width;
               };
               for (auto k : {Kernel{1e-12, 3e12, 3e13}, Kernel{1e-12, 6e12, 4e13}}) {
                 const double c0 = 1.2e15;
                 JointSpectralAmplitude jsa;
                 jsa.grid = build_grid(c0, k.half_width, 256, 256);
                 jsa.layout = JsaLayout::Dense;
                 const auto& s = jsa.grid.signal.nodes;
                 const auto& i = jsa.grid.idler.nodes;
                 jsa.values.resize(static_cast<Eigen::Index>(s.size()), static_cast<Eigen::Index>(i.size()));
                 for (std::size_t a = 0; a < s.size(); ++a)
                   for (std::size_t b = 0; b < i.size(); ++b) {
                     double x = s[a] - c0, y = i[b] - c0;
                     jsa.values(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
                         std::exp(-0.5 * (x + y) * (x + y) * k.tau * k.tau - 0.5 * (x - y) * (x - y) / (k.sigma * k.sigma));
                   }
                 normalize(jsa);
                 auto dec = schmidt_decompose(jsa, 8);
                 auto ref = oracle::mehler_eigenvalues(k.tau, k.sigma, 5);
                 double dev = 0.0;
                 for (std::size_t n = 0; n < 5; ++n) dev = std::max(dev, std::abs(dec.eigenvalues[n] - ref[n]));
                 r.checks.push_back({fmt("Mehler tau=%g s, sigma=%g rad/s: lambda_0..4 = %.6f %.6f %.6f %.6f %.6f, max |diff| %.2e "
                                         "(limit 1e-4)",
                                         k.tau, k.sigma, dec.eigenvalues[0], dec.eigenvalues[1], dec.eigenvalues[2],
                                         dec.eigenvalues[3], dec.eigenvalues[4], dev),
                                     dev < 1e-4});
               }
             });
}

namespace {

std::string sweep_csv_with_threads(const RunConfig& cfg, double gamma, const char* threads) {
  const char* old = std::getenv("SU11_THREADS");
  std::string saved = old ? old : "";
  ::setenv("SU11_THREADS", threads, 1);
  SweepEngine e(cfg);
  auto res = run_phase_sweep(e, gamma);
  if (old)
    ::setenv("SU11_THREADS", saved.c_str(), 1);
  else
    ::unsetenv("SU11_THREADS");
  auto path = std::filesystem::temp_directory_path() /
              fmt("su11-determinism-%d-%s.csv", static_cast<int>(::getpid()), threads);
  write_sweep_csv(path, res);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  std::filesystem::remove(path);
  return ss.str();
}

double max_gram_error(const ModeBasis& b, std::span<const double> w) {
  Eigen::MatrixXcd g = b.gram(w);
  g -= Eigen::MatrixXcd::Identity(g.rows(), g.cols());
  return g.cwiseAbs().maxCoeff();
}

}  // namespace

CriterionResult numerical_hygiene(const Options& opt) {
  return run(9, "numerical hygiene", "completeness, orthonormality, convergence, determinism, refinement gate", opt,
             [&](CriterionResult& r) {
               RunConfig pulsed = opt.base;
               pulsed.regime = PumpRegime::Pulsed;
               SweepEngine ec(opt.base), ep(pulsed);

               {
                 const auto& g = ec.geometry();
                 double half = 0.5 * ec.omega_p();
                 double db = delta_beta(ec.model(), g.poling_period, half, half);
                 r.checks.push_back({fmt("phase-matching round trip: |dbeta(wp/2, wp/2)| = %.3e rad/m with Lambda = %.6e m (limit "
                                         "1e-10)",
                                         std::abs(db), g.poling_period),
                                     std::abs(db) < 1e-10});
               }

               double comp = 0.0, ortho = 0.0, recon = 0.0, tail = 0.0;
               for (SweepEngine* e : {&ec, &ep})
                 for (double phi : {0.0, kPi / 2, kPi}) {
                   auto d = e->decomposition(phi);
                   double sum = 0.0;
                   for (double l : d->eigenvalues) sum += l;
                   comp = std::max(comp, std::abs(sum + d->tail_mass - 1.0));
                   tail = std::max(tail, d->tail_mass);
                   ortho = std::max({ortho, max_gram_error(d->signal, d->grid->signal.weights),
                                     max_gram_error(d->idler, d->grid->idler.weights)});
                   recon = std::max(recon, d->reconstruction_error);
                 }
               r.checks.push_back({fmt("completeness: max |sum lambda - 1| %.2e (limit 1e-6), retained tail %.2e", comp + tail, tail),
                                   comp + tail < 1e-6});
               r.checks.push_back({fmt("mode orthonormality: max |<u_k|u_j> - delta_kj| %.2e (limit 1e-8)", ortho), ortho < 1e-8});
               r.checks.push_back({fmt("reconstruction error %.2e (limit 1e-6)", recon), recon < 1e-6});

               {
                 double w = angular_frequency(1532e-9);
                 double v1 = group_velocity(ec.model(), Polarization::Ordinary, w, 1e-6);
                 double v2 = group_velocity(ec.model(), Polarization::Ordinary, w, 0.5e-6);
                 double dv = relative(v2, v1);
                 r.checks.push_back({fmt("group velocity step halving: relative change %.2e (limit 1e-8)", dv), dv < 1e-8});
               }
               {
                 double worst = 0.0;
                 const double h = kPi / 200;
                 for (double g : {0.04, 1.3})
                   for (double phi : {kPi / 3, kPi / 2, 2 * kPi / 3}) {
                     auto N = [&](double p) { return vacuum_photons(ec, g, p); };
                     double d1 = (N(phi + h) - N(phi - h)) / (2 * h);
                     double d2 = (N(phi + h / 2) - N(phi - h / 2)) / h;
                     worst = std::max(worst, relative(d2, d1));
                   }
                 r.checks.push_back({fmt("dN/dphi step halving away from pi: max relative change %.2e (limit 1e-4)", worst),
                                     worst < 1e-4});
               }
               {
                 double worst = 0.0;
                 for (SweepEngine* e : {&ec, &ep})
                   for (double phi : {0.5, 1.5, 2.5}) {
                     auto a = e->decomposition(phi);
                     auto b = e->decomposition(phi + 0.01);
                     auto t = track_mode(a->signal, 0, b->signal, b->grid->signal.weights);
                     worst = std::max(worst, relative(b->eigenvalues[t.index], a->eigenvalues[0]));
                   }
                 r.checks.push_back({fmt("first eigenvalue continuity over dphi = 0.01: max jump %.2e (limit 5%%)", worst),
                                     worst < 0.05});
               }
               {
                 RunConfig c = opt.base;
                 auto serial = sweep_csv_with_threads(c, 1.3, "1");
                 auto parallel = sweep_csv_with_threads(c, 1.3, "4");
                 auto again = sweep_csv_with_threads(c, 1.3, "3");
                 RunConfig p = pulsed;
                 p.phi_count = 33;
                 auto ps = sweep_csv_with_threads(p, 1.3, "1");
                 auto pp = sweep_csv_with_threads(p, 1.3, "4");
                 bool same = serial == parallel && serial == again && ps == pp;
                 r.checks.push_back({fmt("determinism: CW sweep CSV (%zu bytes) and pulsed sweep CSV (%zu bytes) byte-identical for "
                                         "1, 3 and 4 workers",
                                         serial.size(), ps.size()),
                                     same});
               }
               {
                 auto gate = convergence_gate(opt.base, 1.3);
                 r.checks.push_back({fmt("refinement gate, device under test (%s -> %s): max drift %.2e (limit %.3g)",
                                         gate.coarse_resolution.c_str(), gate.fine_resolution.c_str(), gate.max_drift,
                                         gate.threshold),
                                     gate.passed});
                 RunConfig toy = pulsed;
                 toy.dispersion = toy_dispersion();
                 toy.poling_period.reset();
                 toy.points = 128;
                 auto pass = convergence_gate(toy, 1.3);
                 r.checks.push_back({fmt("refinement gate, constant-index toy at 128 points: max drift %.2e (passes)", pass.max_drift),
                                     pass.passed});
                 toy.points = 16;
                 auto coarse = convergence_gate(toy, 1.3);
                 r.checks.push_back({fmt("refinement gate, constant-index toy at 16 points: max drift %.2e (must fail)", coarse.max_drift),
                                     !coarse.passed});
               }
             });
}

}  // namespace su11::validation
