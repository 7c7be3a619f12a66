#pragma once

#include <memory>
#include <span>
#include <vector>

#include "su11/observables.hpp"
#include "su11/schmidt.hpp"

namespace su11 {

// Rectangular band [center - half_width, center + half_width] on the signal arm.
struct FilterSpec {
  double center = 0.0;
  double half_width = 0.0;
  void validate() const;
};

// Length of each node's quadrature cell inside the band. Throws BandOutsideGrid.
std::vector<double> band_weights(const FrequencyAxis& axis, const FilterSpec& filter);

struct FilteredMoments {
  double mean = 0.0;
  double variance = 0.0;
  double cross_imag = 0.0;    // imaginary residue of the cross-mode sum
  double tail_budget = 0.0;   // photons possibly lost to mode truncation
};

FilteredMoments filtered_moments(const SchmidtDecomposition& dec, double G, const FilterSpec& filter);
double filtered_mean(const SchmidtDecomposition& dec, double G, const FilterSpec& filter);
double filtered_variance(const SchmidtDecomposition& dec, double G, const FilterSpec& filter);
// 1/sqrt(sum sinh^2(G1 sqrt(eta_k)) * band mass of the single-section mode k). ZeroPhotons on empty band.
double filtered_snl(const SchmidtDecomposition& single, double G1, const FilterSpec& filter);

// Filtered N, variance and SNL at each phase, with sensitivities assembled as in the unfiltered case.
std::vector<ObservableSet> filtered_sensitivity_sweep(std::span<const double> phis,
                                                      std::span<const std::shared_ptr<const SchmidtDecomposition>> decs,
                                                      std::span<const double> gains,
                                                      const SchmidtDecomposition& single, double G1,
                                                      const FilterSpec& filter, bool periodic);

}  // namespace su11
