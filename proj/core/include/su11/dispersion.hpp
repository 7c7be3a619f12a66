#pragma once

#include <filesystem>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace su11 {

enum class Polarization { Ordinary, Extraordinary };

struct FrequencyWindow {
  double min = 0.0;  // rad/s
  double max = 0.0;
  bool contains(double omega) const { return omega >= min && omega <= max; }
};

// n^2 = a + sum_i b_i / (lambda^2 - c_i), lambda in micrometres.
struct SellmeierCoefficients {
  double a = 1.0;
  std::vector<std::pair<double, double>> terms;  // (b_i, c_i)
};

// Natural cubic spline through strictly increasing abscissae. No extrapolation.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);
  double operator()(double x) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, m_;  // m_ = second derivatives
};

class IndexProfile {
 public:
  static IndexProfile sellmeier(SellmeierCoefficients coeffs, FrequencyWindow window);
  static IndexProfile table(std::vector<std::pair<double, double>> omega_n);
  static IndexProfile table(std::vector<std::pair<double, double>> omega_n, FrequencyWindow window);

  // Refractive index; throws OutOfWindow outside window().
  double operator()(double omega) const;
  const FrequencyWindow& window() const { return window_; }

 private:
  IndexProfile(std::variant<SellmeierCoefficients, CubicSpline> form, FrequencyWindow window);
  double evaluate(double omega) const;

  std::variant<SellmeierCoefficients, CubicSpline> form_;
  FrequencyWindow window_;
};

class DispersionModel {
 public:
  DispersionModel(IndexProfile ordinary, IndexProfile extraordinary);

  // Bulk KTP, Kato & Takaoka (2002): ordinary = y axis, extraordinary = z axis.
  static DispersionModel ktp_default();
  // Dispersionless medium on the given window (two-point tables).
  static DispersionModel constant(double n_o, double n_e, FrequencyWindow window);

  const IndexProfile& profile(Polarization pol) const;
  // Intersection of both polarization windows.
  FrequencyWindow window() const;

 private:
  IndexProfile ordinary_;
  IndexProfile extraordinary_;
};

double refractive_index(const DispersionModel& model, Polarization pol, double omega);
double wavevector(const DispersionModel& model, Polarization pol, double omega);

inline constexpr double kGroupVelocityStep = 1e-6;  // relative to omega
double group_velocity(const DispersionModel& model, Polarization pol, double omega,
                      double relative_step = kGroupVelocityStep);

// k_o(w_p) - k_o(w_p/2) - k_e(w_p/2), rad/m.
double degenerate_mismatch(const DispersionModel& model, double omega_p);
// Poling period that cancels the degenerate mismatch, m.
double poling_period(const DispersionModel& model, double pump_wavelength_m);

DispersionModel dispersion_from_json(const nlohmann::json& j);
DispersionModel load_dispersion(const std::filesystem::path& path);

}  // namespace su11
