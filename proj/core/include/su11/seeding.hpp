#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "su11/observables.hpp"
#include "su11/schmidt.hpp"

namespace su11 {

enum class SeedKind { Vacuum, SinglePhotonFirstMode, CoherentFirstMode, CoherentPlaneWave };
enum class DetectionKind { Direct, Homodyne };

struct SeedSpec {
  SeedKind kind = SeedKind::Vacuum;
  double alpha2 = 1e6;  // |alpha|^2, alpha taken real
};

struct DetectionSpec {
  DetectionKind kind = DetectionKind::Direct;
  double theta_a = 0.0;
  double beta_lo = 1.0;
};

const char* to_string(SeedKind k);
const char* to_string(DetectionKind k);
// Throws InvalidArgument for combinations without a model (e.g. homodyne with no coherent seed).
void validate_seeding(const SeedSpec& seed, const DetectionSpec& det);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

// gamma_k = G sqrt(lambda_k); `first` indexes the seeded (tracked) mode.
Moments direct_single_photon_moments(std::span<const double> lambdas, double G, std::size_t first);
Moments direct_coherent_moments(std::span<const double> lambdas, double G, std::size_t first, double alpha2);
Moments homodyne_first_mode_moments(std::span<const double> lambdas, double G, std::size_t first, double alpha2,
                                    double theta_a, double beta_lo);
// p_k: dimensionless weight of mode k at the degenerate frequency.
Moments homodyne_plane_wave_moments(std::span<const double> lambdas, std::span<const double> p, double G,
                                    double alpha2, double theta_a, double beta_lo);

// |u_k(centre)|^2 times the centre node weight, for every retained mode.
std::vector<double> center_weights(const SchmidtDecomposition& dec);

// Reference photon numbers entering the modulator; eta from the single section, eta[0] seeded.
double snl_single_photon(std::span<const double> eta, double G1);
double snl_coherent_direct(std::span<const double> eta, double G1, double alpha2);
double snl_homodyne_first_mode(std::span<const double> eta, double G1, double alpha2);
double snl_homodyne_plane_wave(std::span<const double> eta, std::span<const double> p_single, double G1, double alpha2);

struct SeedSweepPoint {
  double phi = 0.0;
  std::shared_ptr<const SchmidtDecomposition> dec;
  double G = 0.0;
  std::size_t first_mode = 0;
};

std::vector<ObservableSet> seeded_direct_single_photon(std::span<const SeedSweepPoint> sweep,
                                                       const SchmidtDecomposition& single, double G1, bool periodic);
std::vector<ObservableSet> seeded_direct_coherent(std::span<const SeedSweepPoint> sweep,
                                                  const SchmidtDecomposition& single, double G1, double alpha2,
                                                  bool periodic);
std::vector<ObservableSet> homodyne_first_mode(std::span<const SeedSweepPoint> sweep, const SchmidtDecomposition& single,
                                               double G1, double alpha2, double theta_a, double beta_lo, bool periodic);
std::vector<ObservableSet> homodyne_plane_wave(std::span<const SeedSweepPoint> sweep, const SchmidtDecomposition& single,
                                               double G1, double alpha2, double theta_a, double beta_lo, bool periodic);

// Large-seed asymptote of the coherent direct-detection normalized sensitivity, squared:
// (1 + coth^2(gamma cos(phi/2))) cosh^2(gamma/2) / (gamma^2 sin^2(phi/2)).
double coherent_direct_asymptote_sq(double gamma, double phi);
// Same with an overall factor 4, kept for comparison in reports.
double coherent_direct_asymptote_sq_x4(double gamma, double phi);

}  // namespace su11
