#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "su11/config.hpp"
#include "su11/filtering.hpp"
#include "su11/jsa.hpp"
#include "su11/observables.hpp"
#include "su11/schmidt.hpp"
#include "su11/seeding.hpp"

namespace su11 {

using DecompositionPtr = std::shared_ptr<const SchmidtDecomposition>;

// Resolved device, grid and decomposition cache for one configuration.
class SweepEngine {
 public:
  explicit SweepEngine(RunConfig cfg);

  const RunConfig& config() const { return cfg_; }
  const DispersionModel& model() const { return model_; }
  const DeviceGeometry& geometry() const { return geom_; }
  double omega_p() const { return omega_p_; }
  bool cw() const { return cfg_.regime == PumpRegime::CW; }
  const FrequencyGrid& grid() const { return grid_; }
  std::uint64_t hash() const { return hash_; }

  std::vector<double> phases() const;
  // Sweep covers exactly one period with both ends included.
  bool periodic() const;

  JointSpectralAmplitude build_jsa(double phi) const;
  JointSpectralAmplitude build_single_jsa() const;

  DecompositionPtr decomposition(double phi);
  // Parallel over phases; results in input order.
  std::vector<DecompositionPtr> decompositions(std::span<const double> phis);
  DecompositionPtr single_section();

  std::size_t k_max() const;
  std::size_t cache_size() const;

 private:
  using Key = std::tuple<int, std::uint64_t, std::uint64_t>;
  Key key(double phi) const;

  RunConfig cfg_;
  DispersionModel model_;
  DeviceGeometry geom_;
  double omega_p_ = 0.0;
  FrequencyGrid grid_;
  std::uint64_t hash_ = 0;
  std::uint64_t grid_hash_ = 0;
  mutable std::mutex mu_;
  std::map<Key, DecompositionPtr> cache_;
  DecompositionPtr single_;
};

struct SweepMetadata {
  std::string config_hash;
  std::string observable;  // "photon_number" or "homodyne_quadrature"
  double gamma = 0.0;
  double g0 = 0.0;
  double G0 = 0.0;
  double G1 = 0.0;
  double poling_period = 0.0;
  std::size_t grid_points = 0;
  std::size_t modes_retained = 0;
  double max_tail_mass = 0.0;
  double max_truncation_bound = 0.0;
  double max_reconstruction_error = 0.0;
  unsigned threads = 1;
  double wall_seconds = 0.0;
};

struct SweepResult {
  std::vector<ObservableSet> rows;
  std::vector<ObservableSet> filtered;  // empty without a filter
  std::vector<double> gains;            // G(phi)
  std::vector<std::size_t> first_mode;  // tracked seeded mode per row
  SweepMetadata meta;

  std::optional<MinSensitivity> minimum() const;
  std::optional<MinSensitivity> filtered_minimum() const;
};

SweepResult run_phase_sweep(SweepEngine& engine, double gamma);
SweepResult run_phase_sweep(const RunConfig& cfg, double gamma);

struct GainPoint {
  double gamma = 0.0;
  std::optional<MinSensitivity> minimum;
  std::optional<MinSensitivity> filtered_minimum;
  double trend = 0.0;  // sinh(gamma/2)/gamma
  double N0 = 0.0;
};

struct GainSweepResult {
  std::vector<GainPoint> points;
  SweepMetadata meta;
};

GainSweepResult run_gain_sweep(SweepEngine& engine, std::span<const double> gammas);

// Indices of the seeded mode along the sweep, following overlap from the first phase.
std::vector<std::size_t> track_first_mode(std::span<const DecompositionPtr> decs, TrackingPolicy policy);

struct GateProbe {
  double phi = 0.0;
  std::string quantity;
  double coarse = 0.0;
  double fine = 0.0;
  double drift = 0.0;
};

struct GateReport {
  bool passed = false;
  double threshold = 0.0;
  std::string coarse_resolution;
  std::string fine_resolution;
  std::vector<GateProbe> probes;
  double max_drift = 0.0;
  std::string summary() const;
};

// Configuration at doubled resolution: 2N-1 grid points, or twice the CW sub-samples.
RunConfig refined(const RunConfig& cfg);
GateReport convergence_gate(const RunConfig& cfg, double gamma, std::span<const double> probe_phis = {});

}  // namespace su11
