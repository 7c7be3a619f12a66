#include "su11/sweep.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <sstream>

#include "su11/error.hpp"
#include "su11/parallel.hpp"
#include "su11/units.hpp"

namespace su11 {

SweepEngine::SweepEngine(RunConfig cfg) : cfg_(std::move(cfg)), model_(resolve_dispersion(cfg_)) {
  cfg_.validate();
  omega_p_ = angular_frequency(cfg_.pump_wavelength);
  geom_.length = cfg_.length;
  geom_.gap = cfg_.gap;
  geom_.variant = cfg_.variant;
  geom_.grating_phase = cfg_.grating_phase;
  geom_.include_gap_generation = cfg_.include_gap_generation;
  geom_.poling_period = cfg_.poling_period ? *cfg_.poling_period : poling_period(model_, cfg_.pump_wavelength);
  geom_.validate();

  PumpSpec pump{omega_p_, cfg_.regime, cfg_.tau};
  pump.validate(model_);
  double center = 0.5 * omega_p_;
  double hw = cfg_.effective_half_width();
  if (cw()) {
    auto axis = bin_axis(center, hw, cfg_.mode_spacing);
    auto w = model_.window();
    if (!w.contains(axis.extent_lo()) || !w.contains(axis.extent_hi()))
      fail(ErrorCode::OutOfWindow, "CW bins leave the dispersion window");
    grid_ = {axis, axis};
  } else {
    grid_ = build_grid(model_, center, hw, cfg_.points, cfg_.points);
  }
  hash_ = config_hash(cfg_);
  grid_hash_ = grid_.hash();
}

std::vector<double> SweepEngine::phases() const {
  std::vector<double> p(cfg_.phi_count);
  double n = static_cast<double>(cfg_.phi_count - 1);
  for (std::size_t i = 0; i < p.size(); ++i)
    p[i] = cfg_.phi_start + (cfg_.phi_stop - cfg_.phi_start) * (static_cast<double>(i) / n);
  p.back() = cfg_.phi_stop;
  return p;
}

bool SweepEngine::periodic() const { return std::abs(cfg_.phi_stop - cfg_.phi_start - kTwoPi) < 1e-12; }

JointSpectralAmplitude SweepEngine::build_jsa(double phi) const {
  ModulatorSpec mod(phi, cfg_.chirp_slope, 0.5 * omega_p_);
  if (cw()) return build_jsa_cw(model_, geom_, mod, grid_.signal, cfg_.subsamples);
  return build_jsa_pulsed(model_, geom_, PumpSpec::pulsed(omega_p_, cfg_.tau), mod, grid_);
}

JointSpectralAmplitude SweepEngine::build_single_jsa() const {
  DeviceGeometry single = geom_;
  single.variant = DeviceVariant::SingleSection;
  if (cw()) return build_jsa_cw(model_, single, ModulatorSpec(0.0, 0.0, 0.5 * omega_p_), grid_.signal, cfg_.subsamples);
  return build_jsa_single_section(model_, single, PumpSpec::pulsed(omega_p_, cfg_.tau), grid_);
}

std::size_t SweepEngine::k_max() const { return cw() ? kAllModes : cfg_.k_max; }

SweepEngine::Key SweepEngine::key(double phi) const {
  return {static_cast<int>(geom_.variant), std::bit_cast<std::uint64_t>(canonical_phase(phi)), grid_hash_};
}

DecompositionPtr SweepEngine::decomposition(double phi) {
  double p = phi;
  return decompositions(std::span<const double>(&p, 1)).front();
}

std::vector<DecompositionPtr> SweepEngine::decompositions(std::span<const double> phis) {
  std::vector<DecompositionPtr> out(phis.size());
  std::vector<std::size_t> missing;
  std::map<Key, std::size_t> first_of;
  {
    std::lock_guard lock(mu_);
    for (std::size_t i = 0; i < phis.size(); ++i) {
      auto k = key(phis[i]);
      if (auto it = cache_.find(k); it != cache_.end()) {
        out[i] = it->second;
      } else if (!first_of.count(k)) {
        first_of[k] = i;
        missing.push_back(i);
      }
    }
  }
  std::vector<DecompositionPtr> fresh(missing.size());
  parallel_for(missing.size(), [&](std::size_t t) {
    auto jsa = build_jsa(phis[missing[t]]);
    fresh[t] = std::make_shared<const SchmidtDecomposition>(schmidt_decompose(jsa, k_max()));
  });
  std::lock_guard lock(mu_);
  for (std::size_t t = 0; t < missing.size(); ++t) cache_.emplace(key(phis[missing[t]]), fresh[t]);
  for (std::size_t i = 0; i < phis.size(); ++i)
    if (!out[i]) out[i] = cache_.at(key(phis[i]));
  return out;
}

DecompositionPtr SweepEngine::single_section() {
  std::lock_guard lock(mu_);
  if (!single_) single_ = std::make_shared<const SchmidtDecomposition>(schmidt_decompose(build_single_jsa(), k_max()));
  return single_;
}

std::size_t SweepEngine::cache_size() const {
  std::lock_guard lock(mu_);
  return cache_.size();
}

std::optional<MinSensitivity> SweepResult::minimum() const {
  try {
    return find_min_sensitivity(rows);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::optional<MinSensitivity> SweepResult::filtered_minimum() const {
  if (filtered.empty()) return std::nullopt;
  try {
    return find_min_sensitivity(filtered);
  } catch (const Error&) {
    return std::nullopt;
  }
}

std::vector<std::size_t> track_first_mode(std::span<const DecompositionPtr> decs, TrackingPolicy policy) {
  std::vector<std::size_t> idx(decs.size(), 0);
  if (policy == TrackingPolicy::Argmax) return idx;
  for (std::size_t i = 1; i < decs.size(); ++i) {
    const auto& w = decs[i]->grid->signal.weights;
    auto t = track_mode(decs[i - 1]->signal, idx[i - 1], decs[i]->signal, w);
    if (t.overlap < 0.5) {
      std::ostringstream os;
      os << "first-mode overlap " << t.overlap << " between phases " << decs[i - 1]->phi << " and " << decs[i]->phi;
      fail(ErrorCode::ModeTrackingLost, os.str());
    }
    idx[i] = t.index;
  }
  return idx;
}

SweepResult run_phase_sweep(SweepEngine& engine, double gamma) {
  auto t0 = std::chrono::steady_clock::now();
  const auto& cfg = engine.config();
  auto phis = engine.phases();
  auto decs = engine.decompositions(phis);
  auto dec0 = engine.decomposition(0.0);
  auto single = engine.single_section();
  auto cal = calibrate_gain(*dec0, gamma);
  const double G0 = cal.gain(dec0->raw_norm);
  const double G1 = cfg.snl_gain_ratio * G0;
  const bool periodic = engine.periodic();

  SweepResult res;
  res.gains.resize(phis.size());
  for (std::size_t i = 0; i < phis.size(); ++i) res.gains[i] = cal.gain(decs[i]->raw_norm);

  const bool vacuum = cfg.seed.kind == SeedKind::Vacuum;
  if (vacuum) {
    double snl = snl_vacuum(*single, G1);
    res.rows.resize(phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) {
      auto& r = res.rows[i];
      r.phi = phis[i];
      r.N = mean_photons_vacuum(*decs[i], res.gains[i]);
      r.varN = variance_vacuum(*decs[i], res.gains[i]);
      r.dphi_snl = snl;
    }
    assemble_sensitivity(res.rows, periodic);
  } else {
    res.first_mode = track_first_mode(decs, cfg.tracking);
    std::vector<SeedSweepPoint> pts(phis.size());
    for (std::size_t i = 0; i < phis.size(); ++i) pts[i] = {phis[i], decs[i], res.gains[i], res.first_mode[i]};
    const double a2 = cfg.seed.alpha2, th = cfg.detection.theta_a, b = cfg.detection.beta_lo;
    if (cfg.detection.kind == DetectionKind::Direct) {
      res.rows = cfg.seed.kind == SeedKind::SinglePhotonFirstMode ? seeded_direct_single_photon(pts, *single, G1, periodic)
                                                                   : seeded_direct_coherent(pts, *single, G1, a2, periodic);
    } else if (cfg.seed.kind == SeedKind::CoherentFirstMode) {
      res.rows = homodyne_first_mode(pts, *single, G1, a2, th, b, periodic);
    } else {
      res.rows = homodyne_plane_wave(pts, *single, G1, a2, th, b, periodic);
    }
  }

  if (cfg.filter_half_width) {
    FilterSpec f{0.5 * engine.omega_p(), *cfg.filter_half_width};
    res.filtered = filtered_sensitivity_sweep(phis, decs, res.gains, *single, G1, f, periodic);
  }

  auto& m = res.meta;
  m.config_hash = hash_hex(engine.hash());
  m.observable = cfg.detection.kind == DetectionKind::Homodyne ? "homodyne_quadrature" : "photon_number";
  m.gamma = gamma;
  m.g0 = cal.g0;
  m.G0 = G0;
  m.G1 = G1;
  m.poling_period = engine.geometry().poling_period;
  m.grid_points = engine.grid().signal.size();
  m.modes_retained = decs.front()->size();
  for (std::size_t i = 0; i < decs.size(); ++i) {
    m.max_tail_mass = std::max(m.max_tail_mass, decs[i]->tail_mass);
    m.max_truncation_bound = std::max(m.max_truncation_bound, truncation_bound(*decs[i], res.gains[i]));
    m.max_reconstruction_error = std::max(m.max_reconstruction_error, decs[i]->reconstruction_error);
  }
  m.threads = worker_count();
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

SweepResult run_phase_sweep(const RunConfig& cfg, double gamma) {
  SweepEngine engine(cfg);
  return run_phase_sweep(engine, gamma);
}

GainSweepResult run_gain_sweep(SweepEngine& engine, std::span<const double> gammas) {
  auto t0 = std::chrono::steady_clock::now();
  GainSweepResult out;
  for (double g : gammas) {
    auto r = run_phase_sweep(engine, g);
    GainPoint p;
    p.gamma = g;
    p.minimum = r.minimum();
    p.filtered_minimum = r.filtered_minimum();
    p.trend = high_gain_trend(g);
    p.N0 = mean_photons_vacuum(*engine.decomposition(0.0), r.meta.G0);
    out.points.push_back(p);
    out.meta = r.meta;
  }
  out.meta.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

RunConfig refined(const RunConfig& cfg) {
  RunConfig r = cfg;
  if (cfg.regime == PumpRegime::CW)
    r.subsamples = 2 * cfg.subsamples;
  else
    r.points = 2 * cfg.points - 1;
  return r;
}

namespace {

std::string resolution_label(const RunConfig& c) {
  std::ostringstream os;
  if (c.regime == PumpRegime::CW)
    os << "cw bins, " << c.subsamples << " sub-samples per bin";
  else
    os << c.points << "x" << c.points << " grid";
  return os.str();
}

struct ProbeValues {
  std::vector<double> N, var, ratio;
};

ProbeValues probe(const RunConfig& cfg, double gamma, std::span<const double> phis) {
  SweepEngine e(cfg);
  auto dec0 = e.decomposition(0.0);
  auto cal = calibrate_gain(*dec0, gamma);
  auto decs = e.decompositions(phis);
  ProbeValues v;
  for (const auto& d : decs) {
    double G = cal.gain(d->raw_norm);
    v.N.push_back(mean_photons_vacuum(*d, G));
    v.var.push_back(variance_vacuum(*d, G));
    v.ratio.push_back(d->raw_norm / dec0->raw_norm);
  }
  return v;
}

}  // namespace

std::string GateReport::summary() const {
  std::ostringstream os;
  os.precision(6);
  os << (passed ? "converged" : "NOT converged") << " (threshold " << threshold << ", max drift " << max_drift << ")\n";
  os << "  coarse: " << coarse_resolution << "\n  fine:   " << fine_resolution << "\n";
  for (const auto& p : probes)
    os << "  phi=" << p.phi << " " << p.quantity << ": " << p.coarse << " -> " << p.fine << " (drift " << p.drift << ")\n";
  return os.str();
}

GateReport convergence_gate(const RunConfig& cfg, double gamma, std::span<const double> probe_phis) {
  std::vector<double> phis(probe_phis.begin(), probe_phis.end());
  if (phis.empty()) phis = {kPi / 3.0, kPi / 2.0, 2.0 * kPi / 3.0, 5.0 * kPi / 6.0};
  RunConfig fine_cfg = refined(cfg);
  auto c = probe(cfg, gamma, phis);
  auto f = probe(fine_cfg, gamma, phis);
  GateReport rep;
  rep.threshold = cfg.convergence_threshold;
  rep.coarse_resolution = resolution_label(cfg);
  rep.fine_resolution = resolution_label(fine_cfg);
  auto add = [&](double phi, const char* q, double a, double b) {
    double d = std::abs(b - a) / std::max(std::abs(b), 1e-300);
    rep.probes.push_back({phi, q, a, b, d});
    rep.max_drift = std::max(rep.max_drift, d);
  };
  for (std::size_t i = 0; i < phis.size(); ++i) {
    add(phis[i], "N", c.N[i], f.N[i]);
    add(phis[i], "varN", c.var[i], f.var[i]);
    add(phis[i], "G/G0", c.ratio[i], f.ratio[i]);
  }
  rep.passed = rep.max_drift < rep.threshold;
  return rep;
}

}  // namespace su11
