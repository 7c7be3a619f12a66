#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <vector>

#include "su11/schmidt.hpp"

namespace su11 {

double mean_photons_vacuum(std::span<const double> lambdas, double G);
double variance_vacuum(std::span<const double> lambdas, double G);
inline double mean_photons_vacuum(const SchmidtDecomposition& d, double G) { return mean_photons_vacuum(d.lambdas(), G); }
inline double variance_vacuum(const SchmidtDecomposition& d, double G) { return variance_vacuum(d.lambdas(), G); }

// Upper bound on the photon number carried by modes dropped at truncation.
double truncation_bound(const SchmidtDecomposition& dec, double G);

// Central difference of `values` at interior index i of a uniform grid with step h.
double dN_dphi(std::span<const double> values, double h, std::size_t i);
// True when the grid cannot resolve a slope at i: a discrete extremum or equal stencil values.
bool is_stationary(double before, double here, double after);

inline constexpr double kInfiniteSensitivity = std::numeric_limits<double>::infinity();

// sqrt(var)/|d|; +inf for d == 0.
double phase_sensitivity(double variance, double derivative);

// 1/sqrt(sum sinh^2(G1 sqrt(eta_k))); ZeroPhotons when G1 == 0.
double snl_vacuum(std::span<const double> eta, double G1);
inline double snl_vacuum(const SchmidtDecomposition& single, double G1) { return snl_vacuum(single.lambdas(), G1); }

double asymptote_low_gain(double phi);
double asymptote_high_gain(double gamma, double phi);
double high_gain_trend(double gamma);

struct ObservableSet {
  double phi = 0.0;
  double N = 0.0;        // mean photon number (or mean quadrature for homodyne)
  double varN = 0.0;
  double dNdphi = 0.0;
  double dphi = 0.0;     // phase sensitivity
  double dphi_snl = 0.0;
  double normalized = 0.0;
  bool derivative_zero = false;
  bool boundary = false;  // no derivative available (open sweep end)
};

struct MinSensitivity {
  double phi = 0.0;
  double value = 0.0;
  std::size_t index = 0;
};

// Grid minimum of the finite values, refined by golden section on a local quadratic.
MinSensitivity find_min_sensitivity(std::span<const double> phi, std::span<const double> normalized);
MinSensitivity find_min_sensitivity(std::span<const ObservableSet> rows);

// Fills dNdphi, dphi and normalized from N, varN and dphi_snl on a uniform phase grid.
// `periodic` wraps the ends (grid covering exactly one period, both ends included).
void assemble_sensitivity(std::vector<ObservableSet>& rows, bool periodic);

// Maximal intervals of phi where normalized < 1, as (start, stop) node pairs.
std::vector<std::pair<double, double>> supersensitivity_bands(std::span<const ObservableSet> rows);

}  // namespace su11
