#include "su11/filtering.hpp"

#include <cmath>

#include "su11/error.hpp"
#include "su11/numeric.hpp"

namespace su11 {

void FilterSpec::validate() const {
  if (!(half_width > 0.0) || !std::isfinite(half_width)) fail(ErrorCode::InvalidArgument, "filter half-width must be positive");
}

std::vector<double> band_weights(const FrequencyAxis& axis, const FilterSpec& filter) {
  filter.validate();
  double lo = filter.center - filter.half_width, hi = filter.center + filter.half_width;
  double tol = 1e-12 * std::abs(axis.center);
  if (lo < axis.extent_lo() - tol || hi > axis.extent_hi() + tol)
    fail(ErrorCode::BandOutsideGrid, "filter band exceeds the frequency grid");
  std::vector<double> b(axis.size());
  for (std::size_t j = 0; j < axis.size(); ++j) b[j] = axis.overlap(j, lo, hi);
  return b;
}

FilteredMoments filtered_moments(const SchmidtDecomposition& dec, double G, const FilterSpec& filter) {
  auto b = band_weights(dec.grid->signal, filter);
  const std::size_t K = dec.size();
  std::vector<double> s(K);
  for (std::size_t k = 0; k < K; ++k) s[k] = std::sinh(G * std::sqrt(dec.eigenvalues[k]));

  FilteredMoments out;
  out.tail_budget = truncation_bound(dec, G);
  if (dec.signal.is_point()) {
    std::vector<double> mass(K);
    for (std::size_t k = 0; k < K; ++k) mass[k] = dec.signal.mass(k, b);
    out.mean = pairwise_sum(0, K, [&](std::size_t k) { return s[k] * s[k] * mass[k]; });
    double cross = pairwise_sum(0, K, [&](std::size_t k) {
      double t = mass[k] * s[k] * s[k];
      return t * t;
    });
    out.variance = out.mean + cross;
    return out;
  }
  Eigen::MatrixXcd M = dec.signal.gram(b);
  out.mean = pairwise_sum(0, K, [&](std::size_t k) { return s[k] * s[k] * M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)).real(); });
  double cross = 0.0, imag = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    double row = 0.0, row_im = 0.0;
    for (std::size_t q = 0; q < K; ++q) {
      cplx t = M(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(q)) * (s[k] * s[q]);
      cplx sq = t * std::conj(t);
      row += sq.real();
      row_im += sq.imag();
    }
    cross += row;
    imag += row_im;
  }
  out.variance = out.mean + cross;
  out.cross_imag = imag;
  return out;
}

double filtered_mean(const SchmidtDecomposition& dec, double G, const FilterSpec& filter) {
  return filtered_moments(dec, G, filter).mean;
}

double filtered_variance(const SchmidtDecomposition& dec, double G, const FilterSpec& filter) {
  return filtered_moments(dec, G, filter).variance;
}

double filtered_snl(const SchmidtDecomposition& single, double G1, const FilterSpec& filter) {
  if (!(G1 > 0.0)) fail(ErrorCode::ZeroPhotons, "single-section gain is zero");
  auto b = band_weights(single.grid->signal, filter);
  double n = pairwise_sum(0, single.size(), [&](std::size_t k) {
    double s = std::sinh(G1 * std::sqrt(single.eigenvalues[k]));
    return s * s * single.signal.mass(k, b);
  });
  if (!(n > 0.0)) fail(ErrorCode::ZeroPhotons, "no reference photons inside the filter band");
  return 1.0 / std::sqrt(n);
}

std::vector<ObservableSet> filtered_sensitivity_sweep(std::span<const double> phis,
                                                      std::span<const std::shared_ptr<const SchmidtDecomposition>> decs,
                                                      std::span<const double> gains,
                                                      const SchmidtDecomposition& single, double G1,
                                                      const FilterSpec& filter, bool periodic) {
  if (decs.size() != gains.size() || decs.size() != phis.size())
    fail(ErrorCode::InvalidArgument, "one phase and gain per decomposition required");
  double snl = filtered_snl(single, G1, filter);
  std::vector<ObservableSet> rows(decs.size());
  for (std::size_t i = 0; i < decs.size(); ++i) {
    auto m = filtered_moments(*decs[i], gains[i], filter);
    rows[i].phi = phis[i];
    rows[i].N = m.mean;
    rows[i].varN = m.variance;
    rows[i].dphi_snl = snl;
  }
  assemble_sensitivity(rows, periodic);
  return rows;
}

}  // namespace su11
