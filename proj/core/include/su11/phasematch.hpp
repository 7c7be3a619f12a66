#pragma once

#include "su11/dispersion.hpp"

namespace su11 {

enum class PumpRegime { Pulsed, CW };

struct PumpSpec {
  double omega_p = 0.0;  // rad/s
  PumpRegime regime = PumpRegime::Pulsed;
  double tau = 0.0;  // s, pulsed only

  static PumpSpec pulsed(double omega_p, double tau);
  static PumpSpec cw(double omega_p);
  void validate(const DispersionModel& model) const;
};

struct ModulatorSpec {
  double phi = 0.0;          // rad
  double chirp_slope = 0.0;  // s/rad, relative slope of the modulator response about reference_omega
  double reference_omega = 0.0;

  ModulatorSpec() = default;
  ModulatorSpec(double phi_, double chirp, double reference);
};

double canonical_phase(double phi);  // into [0, 2pi)

enum class DeviceVariant { NonCompensated, Compensated, SingleSection };

struct DeviceGeometry {
  double length = 8e-3;          // L, m
  double gap = 10e-3;            // l, m
  double poling_period = 0.0;    // Lambda, m
  DeviceVariant variant = DeviceVariant::Compensated;
  double grating_phase = 0.0;    // second grating offset, rad
  bool include_gap_generation = false;

  void validate() const;
};

const char* to_string(DeviceVariant v);
const char* to_string(PumpRegime r);

// exp(-(ws+wi-wp)^2 tau^2 / 2); throws CWRegime for a CW pump.
double pump_envelope(const PumpSpec& pump, double omega_s, double omega_i);

double delta_beta(const DispersionModel& model, double poling_period, double omega_s, double omega_i);
// Mismatch after the polarization swap; identical to delta_beta with the arguments exchanged.
double delta_beta_bar(const DispersionModel& model, double poling_period, double omega_s, double omega_i);

double modulator_phase(const ModulatorSpec& mod, double omega_i);

// sin(x)/x with the Taylor value near zero.
double sinc(double x);

}  // namespace su11
