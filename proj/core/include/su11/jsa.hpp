#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

#include "su11/dispersion.hpp"
#include "su11/grid.hpp"
#include "su11/phasematch.hpp"

namespace su11 {

using cplx = std::complex<double>;

enum class JsaLayout {
  Dense,         // values(j, m) = F(signal[j], idler[m])
  Antidiagonal,  // values(j, 0) = f_j, supported on idler node N-1-j only
};

struct JointSpectralAmplitude {
  FrequencyGrid grid;
  JsaLayout layout = JsaLayout::Dense;
  Eigen::MatrixXcd values;
  double phi = 0.0;
  double raw_norm = 0.0;
  DeviceVariant variant = DeviceVariant::Compensated;
  bool normalized = false;

  std::size_t partner(std::size_t j) const { return grid.idler.size() - 1 - j; }
  // Quadrature L2 norm of the stored amplitude.
  double weighted_norm() const;
  // Point value of F on the grid. Antidiagonal entries are bin-averaged densities f_j / sqrt(w).
  cplx at(std::size_t j, std::size_t m) const;
  Eigen::MatrixXcd dense() const;
};

// Phase-matching factor of one device variant (everything except the pump envelope).
cplx phase_matching(const DispersionModel& model, const DeviceGeometry& geom, const ModulatorSpec& mod,
                    double omega_s, double omega_i);

JointSpectralAmplitude build_jsa_noncompensated(const DispersionModel& model, const DeviceGeometry& geom,
                                                const PumpSpec& pump, const ModulatorSpec& mod,
                                                const FrequencyGrid& grid);
JointSpectralAmplitude build_jsa_compensated(const DispersionModel& model, const DeviceGeometry& geom,
                                             const PumpSpec& pump, const ModulatorSpec& mod,
                                             const FrequencyGrid& grid);
JointSpectralAmplitude build_jsa_single_section(const DispersionModel& model, const DeviceGeometry& geom,
                                                const PumpSpec& pump, const FrequencyGrid& grid);
// Dispatches on geom.variant for a pulsed pump.
JointSpectralAmplitude build_jsa_pulsed(const DispersionModel& model, const DeviceGeometry& geom,
                                        const PumpSpec& pump, const ModulatorSpec& mod, const FrequencyGrid& grid);

// CW reduction on the antidiagonal w_s + w_i = 2 * axis.center. Each bin of `signal_axis`
// is one spectral mode; `subsamples` points per bin average its intensity.
JointSpectralAmplitude build_jsa_cw(const DispersionModel& model, const DeviceGeometry& geom,
                                    const ModulatorSpec& mod, const FrequencyAxis& signal_axis,
                                    int subsamples = 1);

// Records raw_norm and rescales to unit norm. Throws DegenerateJSA for a zero amplitude.
void normalize(JointSpectralAmplitude& jsa);

}  // namespace su11
