#include "su11/seeding.hpp"

#include <cmath>

#include "su11/error.hpp"
#include "su11/numeric.hpp"
#include "su11/units.hpp"

namespace su11 {

const char* to_string(SeedKind k) {
  switch (k) {
    case SeedKind::Vacuum: return "vacuum";
    case SeedKind::SinglePhotonFirstMode: return "single_photon_first_mode";
    case SeedKind::CoherentFirstMode: return "coherent_first_mode";
    case SeedKind::CoherentPlaneWave: return "coherent_plane_wave";
  }
  return "?";
}

const char* to_string(DetectionKind k) { return k == DetectionKind::Direct ? "direct" : "homodyne"; }

void validate_seeding(const SeedSpec& seed, const DetectionSpec& det) {
  if (!(seed.alpha2 >= 0.0) || !std::isfinite(seed.alpha2)) fail(ErrorCode::InvalidArgument, "alpha2 must be >= 0");
  if (det.kind == DetectionKind::Homodyne) {
    if (seed.kind != SeedKind::CoherentFirstMode && seed.kind != SeedKind::CoherentPlaneWave)
      fail(ErrorCode::InvalidArgument, "homodyne detection needs a coherent seed");
    if (!(det.beta_lo > 0.0)) fail(ErrorCode::InvalidArgument, "homodyne needs beta_lo > 0");
    if (!(det.theta_a >= 0.0 && det.theta_a < kTwoPi))
      fail(ErrorCode::InvalidArgument, "theta_a must lie in [0, 2pi)");
  } else if (seed.kind == SeedKind::CoherentPlaneWave) {
    fail(ErrorCode::InvalidArgument, "plane-wave seed is only modelled with homodyne detection");
  }
}

namespace {

double sinh2(double x) {
  double s = std::sinh(x);
  return s * s;
}

double cosh2(double x) {
  double c = std::cosh(x);
  return c * c;
}

}  // namespace

Moments direct_single_photon_moments(std::span<const double> l, double G, std::size_t first) {
  double g1 = G * std::sqrt(l[first]);
  Moments m;
  m.mean = mean_photons_vacuum(l, G) + 1.0 + sinh2(g1);
  m.variance = pairwise_sum(0, l.size(), [&](std::size_t k) {
                 double g = G * std::sqrt(l[k]);
                 return sinh2(g) * cosh2(g);
               }) +
               sinh2(g1) * cosh2(g1);
  return m;
}

Moments direct_coherent_moments(std::span<const double> l, double G, std::size_t first, double alpha2) {
  double g1 = G * std::sqrt(l[first]);
  Moments m;
  m.mean = mean_photons_vacuum(l, G) + alpha2 + alpha2 * sinh2(g1);
  m.variance = variance_vacuum(l, G) + alpha2 * cosh2(g1) * std::cosh(2.0 * g1);
  return m;
}

Moments homodyne_first_mode_moments(std::span<const double> l, double G, std::size_t first, double alpha2,
                                    double theta_a, double beta_lo) {
  double g1 = G * std::sqrt(l[first]);
  Moments m;
  m.mean = 2.0 * std::sqrt(alpha2) * beta_lo * std::cos(theta_a) * std::cosh(g1);
  m.variance = beta_lo * beta_lo * std::cosh(2.0 * g1);
  return m;
}

Moments homodyne_plane_wave_moments(std::span<const double> l, std::span<const double> p, double G, double alpha2,
                                    double theta_a, double beta_lo) {
  double gain = pairwise_sum(0, l.size(), [&](std::size_t k) { return p[k] * (std::cosh(G * std::sqrt(l[k])) - 1.0); });
  double noise = pairwise_sum(0, l.size(), [&](std::size_t k) { return p[k] * sinh2(G * std::sqrt(l[k])); });
  Moments m;
  m.mean = 2.0 * std::sqrt(alpha2) * beta_lo * std::cos(theta_a) * (1.0 + gain);
  m.variance = beta_lo * beta_lo * (1.0 + 2.0 * noise);
  return m;
}

std::vector<double> center_weights(const SchmidtDecomposition& dec) {
  const auto& axis = dec.grid->signal;
  std::size_t c = axis.nearest(axis.center);
  std::vector<double> p(dec.size());
  for (std::size_t k = 0; k < dec.size(); ++k) p[k] = std::norm(dec.signal.value(k, c)) * axis.weights[c];
  return p;
}

namespace {

double inverse_sqrt_photons(double n) {
  if (!(n > 0.0)) fail(ErrorCode::ZeroPhotons, "no reference photons");
  return 1.0 / std::sqrt(n);
}

}  // namespace

double snl_single_photon(std::span<const double> eta, double G1) {
  return inverse_sqrt_photons(1.0 + sinh2(G1 * std::sqrt(eta[0])) + mean_photons_vacuum(eta, G1));
}

double snl_coherent_direct(std::span<const double> eta, double G1, double alpha2) {
  return inverse_sqrt_photons(alpha2 * cosh2(G1 * std::sqrt(eta[0])) + mean_photons_vacuum(eta, G1));
}

double snl_homodyne_first_mode(std::span<const double> eta, double G1, double alpha2) {
  double g = G1 * std::sqrt(eta[0]);
  return inverse_sqrt_photons(alpha2 * cosh2(g) + sinh2(g));
}

double snl_homodyne_plane_wave(std::span<const double> eta, std::span<const double> p, double G1, double alpha2) {
  double noise = pairwise_sum(0, eta.size(), [&](std::size_t k) { return p[k] * sinh2(G1 * std::sqrt(eta[k])); });
  double gain = pairwise_sum(0, eta.size(), [&](std::size_t k) { return p[k] * (std::cosh(G1 * std::sqrt(eta[k])) - 1.0); });
  return inverse_sqrt_photons(alpha2 + noise + alpha2 * gain * gain + 2.0 * alpha2 * gain);
}

namespace {

template <class F>
std::vector<ObservableSet> assemble(std::span<const SeedSweepPoint> sweep, double snl, bool periodic, F&& moments) {
  std::vector<ObservableSet> rows(sweep.size());
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    Moments m = moments(sweep[i]);
    rows[i].phi = sweep[i].phi;
    rows[i].N = m.mean;
    rows[i].varN = m.variance;
    rows[i].dphi_snl = snl;
  }
  assemble_sensitivity(rows, periodic);
  return rows;
}

}  // namespace

std::vector<ObservableSet> seeded_direct_single_photon(std::span<const SeedSweepPoint> sweep,
                                                       const SchmidtDecomposition& single, double G1, bool periodic) {
  return assemble(sweep, snl_single_photon(single.lambdas(), G1), periodic, [](const SeedSweepPoint& s) {
    return direct_single_photon_moments(s.dec->lambdas(), s.G, s.first_mode);
  });
}

std::vector<ObservableSet> seeded_direct_coherent(std::span<const SeedSweepPoint> sweep,
                                                  const SchmidtDecomposition& single, double G1, double alpha2,
                                                  bool periodic) {
  return assemble(sweep, snl_coherent_direct(single.lambdas(), G1, alpha2), periodic, [&](const SeedSweepPoint& s) {
    return direct_coherent_moments(s.dec->lambdas(), s.G, s.first_mode, alpha2);
  });
}

std::vector<ObservableSet> homodyne_first_mode(std::span<const SeedSweepPoint> sweep, const SchmidtDecomposition& single,
                                               double G1, double alpha2, double theta_a, double beta_lo, bool periodic) {
  return assemble(sweep, snl_homodyne_first_mode(single.lambdas(), G1, alpha2), periodic, [&](const SeedSweepPoint& s) {
    return homodyne_first_mode_moments(s.dec->lambdas(), s.G, s.first_mode, alpha2, theta_a, beta_lo);
  });
}

std::vector<ObservableSet> homodyne_plane_wave(std::span<const SeedSweepPoint> sweep, const SchmidtDecomposition& single,
                                               double G1, double alpha2, double theta_a, double beta_lo, bool periodic) {
  auto ps = center_weights(single);
  return assemble(sweep, snl_homodyne_plane_wave(single.lambdas(), ps, G1, alpha2), periodic,
                  [&](const SeedSweepPoint& s) {
                    auto p = center_weights(*s.dec);
                    return homodyne_plane_wave_moments(s.dec->lambdas(), p, s.G, alpha2, theta_a, beta_lo);
                  });
}

double coherent_direct_asymptote_sq(double gamma, double phi) {
  double t = std::tanh(gamma * std::cos(0.5 * phi));
  double s = std::sin(0.5 * phi);
  return (1.0 + 1.0 / (t * t)) * cosh2(0.5 * gamma) / (gamma * gamma * s * s);
}

double coherent_direct_asymptote_sq_x4(double gamma, double phi) { return 4.0 * coherent_direct_asymptote_sq(gamma, phi); }

}  // namespace su11
