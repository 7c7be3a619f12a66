#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "su11/dispersion.hpp"
#include "su11/phasematch.hpp"
#include "su11/seeding.hpp"
#include "su11/units.hpp"

namespace su11 {

enum class TrackingPolicy { Overlap, Argmax };

inline constexpr double kDefaultCwHalfWidth = 2.3e13;      // rad/s
inline constexpr double kDefaultPulsedHalfWidth = 1.2e13;  // rad/s
inline constexpr double kDefaultModeSpacing = 3.5e10;      // rad/s
inline constexpr double kDefaultFilterHalfWidth = 2.855e12;  // rad/s

struct RunConfig {
  // "default", {"file": path} or an inline model object.
  nlohmann::json dispersion = "default";

  DeviceVariant variant = DeviceVariant::Compensated;
  double length = 8e-3;
  double gap = 10e-3;
  std::optional<double> poling_period;  // empty: phase-matched ("auto")
  double grating_phase = 0.0;
  bool include_gap_generation = false;

  double pump_wavelength = 766e-9;
  PumpRegime regime = PumpRegime::CW;
  double tau = 0.35e-12;

  double chirp_slope = 0.0;

  std::optional<double> half_width;  // empty: regime default
  std::size_t points = 256;
  double mode_spacing = kDefaultModeSpacing;
  int subsamples = 1;

  std::size_t k_max = 64;  // dense decompositions; CW keeps every bin
  TrackingPolicy tracking = TrackingPolicy::Overlap;

  double phi_start = 0.0;
  double phi_stop = kTwoPi;
  std::size_t phi_count = 401;
  std::vector<double> gammas = {1.3};
  double snl_gain_ratio = 0.5;

  std::optional<double> filter_half_width;
  SeedSpec seed;
  DetectionSpec detection;

  double convergence_threshold = 0.005;
  bool convergence_gate = false;

  std::string output_dir = "out";
  std::filesystem::path base_dir;  // for relative dispersion files

  double effective_half_width() const;
  void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
nlohmann::json to_json(const RunConfig& cfg);
RunConfig load_config(const std::filesystem::path& path);

// Applies "a.b.c=value" to a JSON document; value parsed as JSON, falling back to a string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

// FNV-1a over the canonical JSON (output directory excluded).
std::uint64_t config_hash(const RunConfig& cfg);
std::string hash_hex(std::uint64_t h);

DispersionModel resolve_dispersion(const RunConfig& cfg);

}  // namespace su11
