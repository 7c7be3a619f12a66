#include "su11/phasematch.hpp"

#include <cmath>
#include <string>

#include "su11/error.hpp"
#include "su11/units.hpp"

namespace su11 {

PumpSpec PumpSpec::pulsed(double omega_p, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) fail(ErrorCode::InvalidArgument, "pulse duration must be positive");
  return {omega_p, PumpRegime::Pulsed, tau};
}

PumpSpec PumpSpec::cw(double omega_p) { return {omega_p, PumpRegime::CW, 0.0}; }

void PumpSpec::validate(const DispersionModel& model) const {
  if (regime == PumpRegime::Pulsed && !(tau > 0.0))
    fail(ErrorCode::InvalidArgument, "pulse duration must be positive");
  auto w = model.window();
  if (!w.contains(omega_p) || !w.contains(0.5 * omega_p))
    fail(ErrorCode::OutOfWindow, "pump or degenerate frequency outside the dispersion window");
}

ModulatorSpec::ModulatorSpec(double phi_, double chirp, double reference)
    : phi(canonical_phase(phi_)), chirp_slope(chirp), reference_omega(reference) {
  if (!std::isfinite(chirp)) fail(ErrorCode::InvalidArgument, "chirp slope must be finite");
}

double canonical_phase(double phi) {
  if (!std::isfinite(phi)) fail(ErrorCode::InvalidArgument, "phase must be finite");
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

void DeviceGeometry::validate() const {
  if (!(length > 0.0)) fail(ErrorCode::InvalidArgument, "section length must be positive");
  if (!(gap >= 0.0)) fail(ErrorCode::InvalidArgument, "gap length must be non-negative");
  if (!(poling_period > 0.0)) fail(ErrorCode::InvalidArgument, "poling period must be positive");
}

const char* to_string(DeviceVariant v) {
  switch (v) {
    case DeviceVariant::NonCompensated: return "noncompensated";
    case DeviceVariant::Compensated: return "compensated";
    case DeviceVariant::SingleSection: return "single_section";
  }
  return "?";
}

const char* to_string(PumpRegime r) { return r == PumpRegime::CW ? "cw" : "pulsed"; }

double pump_envelope(const PumpSpec& pump, double omega_s, double omega_i) {
  if (pump.regime == PumpRegime::CW)
    fail(ErrorCode::CWRegime, "CW pump has no finite envelope; use the antidiagonal builder");
  double x = (omega_s + omega_i - pump.omega_p) * pump.tau;
  return std::exp(-0.5 * x * x);
}

double delta_beta(const DispersionModel& model, double poling_period, double omega_s, double omega_i) {
  double bare = wavevector(model, Polarization::Ordinary, omega_s + omega_i) -
                wavevector(model, Polarization::Ordinary, omega_s) -
                wavevector(model, Polarization::Extraordinary, omega_i);
  return bare + kTwoPi / poling_period;
}

double delta_beta_bar(const DispersionModel& model, double poling_period, double omega_s, double omega_i) {
  return delta_beta(model, poling_period, omega_i, omega_s);
}

double modulator_phase(const ModulatorSpec& mod, double omega_i) {
  return mod.phi * (1.0 + mod.chirp_slope * (omega_i - mod.reference_omega));
}

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

}  // namespace su11
