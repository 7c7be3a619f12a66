#include "su11/jsa.hpp"

#include <cmath>

#include "su11/error.hpp"
#include "su11/units.hpp"

namespace su11 {

double JointSpectralAmplitude::weighted_norm() const {
  double s = 0.0;
  if (layout == JsaLayout::Antidiagonal) {
    for (Eigen::Index j = 0; j < values.rows(); ++j) s += std::norm(values(j, 0)) * grid.signal.weights[j];
  } else {
    for (Eigen::Index m = 0; m < values.cols(); ++m) {
      double col = 0.0;
      for (Eigen::Index j = 0; j < values.rows(); ++j) col += std::norm(values(j, m)) * grid.signal.weights[j];
      s += col * grid.idler.weights[m];
    }
  }
  return std::sqrt(s);
}

cplx JointSpectralAmplitude::at(std::size_t j, std::size_t m) const {
  if (layout == JsaLayout::Dense) return values(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m));
  if (m != partner(j)) return {0.0, 0.0};
  return values(static_cast<Eigen::Index>(j), 0) / std::sqrt(grid.idler.weights[m]);
}

Eigen::MatrixXcd JointSpectralAmplitude::dense() const {
  if (layout == JsaLayout::Dense) return values;
  auto ns = static_cast<Eigen::Index>(grid.signal.size());
  auto ni = static_cast<Eigen::Index>(grid.idler.size());
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(ns, ni);
  for (Eigen::Index j = 0; j < ns; ++j) d(j, ni - 1 - j) = at(j, partner(j));
  return d;
}

cplx phase_matching(const DispersionModel& model, const DeviceGeometry& geom, const ModulatorSpec& mod,
                    double omega_s, double omega_i) {
  const double L = geom.length, l = geom.gap;
  double db = delta_beta(model, geom.poling_period, omega_s, omega_i);
  double x = 0.5 * db * L;
  switch (geom.variant) {
    case DeviceVariant::SingleSection:
      return sinc(x) * std::polar(1.0, x);
    case DeviceVariant::NonCompensated: {
      double pm = modulator_phase(mod, omega_i);
      // Two gratings separated by the gap; the second sees the extra modulator phase.
      double theta = db * L + db * l + pm + geom.grating_phase;
      cplx f = sinc(x) * std::cos(0.5 * theta) * std::polar(1.0, x + 0.5 * theta);
      if (geom.include_gap_generation && l > 0.0) {
        double q = db - kTwoPi / geom.poling_period;
        // Unpoled gap: weight pi/2 relative to the first Fourier order of the gratings.
        f += 0.5 * kPi / (2.0 * L) * l * sinc(0.5 * q * l) * std::polar(1.0, q * (L + 0.5 * l));
      }
      return f;
    }
    case DeviceVariant::Compensated: {
      double pm = modulator_phase(mod, omega_i);
      double dbb = delta_beta_bar(model, geom.poling_period, omega_s, omega_i);
      double xb = 0.5 * dbb * L;
      cplx first = sinc(x) * std::polar(1.0, x);
      cplx second = sinc(xb) * std::polar(1.0, xb + db * L + 0.5 * db * l + pm + 0.5 * dbb * l + geom.grating_phase);
      return 0.5 * (first + second);
    }
  }
  return {0.0, 0.0};
}

namespace {

void check_variant(const DeviceGeometry& geom, DeviceVariant expected) {
  if (geom.variant != expected)
    fail(ErrorCode::InvalidArgument, std::string("builder expects variant ") + to_string(expected) + ", got " +
                                         to_string(geom.variant));
}

JointSpectralAmplitude fill_dense(const DispersionModel& model, const DeviceGeometry& geom, const PumpSpec& pump,
                                  const ModulatorSpec& mod, const FrequencyGrid& grid) {
  geom.validate();
  if (pump.regime == PumpRegime::CW)
    fail(ErrorCode::CWRegime, "two-dimensional builders need a pulsed pump; use build_jsa_cw");
  JointSpectralAmplitude jsa;
  jsa.grid = grid;
  jsa.layout = JsaLayout::Dense;
  jsa.variant = geom.variant;
  jsa.phi = mod.phi;
  const auto ns = static_cast<Eigen::Index>(grid.signal.size());
  const auto ni = static_cast<Eigen::Index>(grid.idler.size());
  jsa.values.resize(ns, ni);
  for (Eigen::Index m = 0; m < ni; ++m) {
    double wi = grid.idler.nodes[m];
    for (Eigen::Index j = 0; j < ns; ++j) {
      double ws = grid.signal.nodes[j];
      jsa.values(j, m) = pump_envelope(pump, ws, wi) * phase_matching(model, geom, mod, ws, wi);
    }
  }
  normalize(jsa);
  return jsa;
}

}  // namespace

JointSpectralAmplitude build_jsa_noncompensated(const DispersionModel& model, const DeviceGeometry& geom,
                                                const PumpSpec& pump, const ModulatorSpec& mod,
                                                const FrequencyGrid& grid) {
  check_variant(geom, DeviceVariant::NonCompensated);
  return fill_dense(model, geom, pump, mod, grid);
}

JointSpectralAmplitude build_jsa_compensated(const DispersionModel& model, const DeviceGeometry& geom,
                                             const PumpSpec& pump, const ModulatorSpec& mod,
                                             const FrequencyGrid& grid) {
  check_variant(geom, DeviceVariant::Compensated);
  return fill_dense(model, geom, pump, mod, grid);
}

JointSpectralAmplitude build_jsa_single_section(const DispersionModel& model, const DeviceGeometry& geom,
                                                const PumpSpec& pump, const FrequencyGrid& grid) {
  DeviceGeometry single = geom;
  single.variant = DeviceVariant::SingleSection;
  return fill_dense(model, single, pump, ModulatorSpec{}, grid);
}

JointSpectralAmplitude build_jsa_pulsed(const DispersionModel& model, const DeviceGeometry& geom,
                                        const PumpSpec& pump, const ModulatorSpec& mod, const FrequencyGrid& grid) {
  return fill_dense(model, geom, pump, mod, grid);
}

JointSpectralAmplitude build_jsa_cw(const DispersionModel& model, const DeviceGeometry& geom,
                                    const ModulatorSpec& mod, const FrequencyAxis& signal_axis, int subsamples) {
  geom.validate();
  if (subsamples < 1) fail(ErrorCode::InvalidArgument, "subsamples must be >= 1");
  JointSpectralAmplitude jsa;
  jsa.grid = {signal_axis, signal_axis};
  jsa.layout = JsaLayout::Antidiagonal;
  jsa.variant = geom.variant;
  jsa.phi = mod.phi;
  const std::size_t n = signal_axis.size();
  jsa.values.resize(static_cast<Eigen::Index>(n), 1);
  for (std::size_t j = 0; j < n; ++j) {
    double ws = signal_axis.nodes[j];
    double wi = signal_axis.nodes[n - 1 - j];
    cplx f;
    if (subsamples == 1) {
      f = phase_matching(model, geom, mod, ws, wi);
    } else {
      double w = signal_axis.weights[j];
      cplx sum = 0.0;
      double intensity = 0.0;
      for (int q = 0; q < subsamples; ++q) {
        double d = ((q + 0.5) / subsamples - 0.5) * w;
        cplx v = phase_matching(model, geom, mod, ws + d, wi - d);
        sum += v;
        intensity += std::norm(v);
      }
      double mag = std::sqrt(intensity / subsamples);
      f = std::abs(sum) > 0.0 ? sum / std::abs(sum) * mag : cplx(mag, 0.0);
    }
    jsa.values(static_cast<Eigen::Index>(j), 0) = f;
  }
  normalize(jsa);
  return jsa;
}

void normalize(JointSpectralAmplitude& jsa) {
  double n = jsa.weighted_norm();
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::DegenerateJSA, "joint spectral amplitude has zero norm");
  jsa.raw_norm = n;
  jsa.values /= n;
  jsa.normalized = true;
}

}  // namespace su11
