#include "su11/observables.hpp"

#include <algorithm>
#include <cmath>

#include "su11/error.hpp"
#include "su11/numeric.hpp"
#include "su11/units.hpp"

namespace su11 {

double mean_photons_vacuum(std::span<const double> lambdas, double G) {
  return pairwise_sum(0, lambdas.size(), [&](std::size_t k) {
    double s = std::sinh(G * std::sqrt(lambdas[k]));
    return s * s;
  });
}

double variance_vacuum(std::span<const double> lambdas, double G) {
  return 0.25 * pairwise_sum(0, lambdas.size(), [&](std::size_t k) {
    double s = std::sinh(2.0 * G * std::sqrt(lambdas[k]));
    return s * s;
  });
}

double truncation_bound(const SchmidtDecomposition& dec, double G) {
  if (dec.tail_mass <= 0.0 || dec.eigenvalues.empty()) return 0.0;
  double lk = dec.eigenvalues.back();
  if (!(lk > 0.0)) return 0.0;
  double s = std::sinh(G * std::sqrt(lk));
  return dec.tail_mass / lk * s * s;
}

double dN_dphi(std::span<const double> values, double h, std::size_t i) {
  if (i == 0 || i + 1 >= values.size())
    fail(ErrorCode::BoundaryPoint, "central difference needs both neighbours (index " + std::to_string(i) + ")");
  return (values[i + 1] - values[i - 1]) / (2.0 * h);
}

bool is_stationary(double before, double here, double after) {
  if (std::abs(after - before) <= 1e-12 * (std::abs(after) + std::abs(before))) return true;
  return (here - before) * (after - here) <= 0.0;
}

double phase_sensitivity(double variance, double derivative) {
  if (derivative == 0.0) return kInfiniteSensitivity;
  return std::sqrt(variance) / std::abs(derivative);
}

double snl_vacuum(std::span<const double> eta, double G1) {
  if (!(G1 > 0.0)) fail(ErrorCode::ZeroPhotons, "single-section gain is zero");
  double n = mean_photons_vacuum(eta, G1);
  if (!(n > 0.0)) fail(ErrorCode::ZeroPhotons, "no reference photons");
  return 1.0 / std::sqrt(n);
}

double asymptote_low_gain(double phi) { return 1.0 / (2.0 * std::sin(0.5 * phi)); }

double asymptote_high_gain(double gamma, double phi) {
  return std::sinh(0.5 * gamma) / (gamma * std::sin(0.5 * phi));
}

double high_gain_trend(double gamma) { return std::sinh(0.5 * gamma) / gamma; }

namespace {

// Minimiser of the parabola through three points, located by golden section on [x0, x2].
std::pair<double, double> refine_quadratic(double x0, double y0, double x1, double y1, double x2, double y2) {
  auto q = [&](double x) {
    return y0 * (x - x1) * (x - x2) / ((x0 - x1) * (x0 - x2)) + y1 * (x - x0) * (x - x2) / ((x1 - x0) * (x1 - x2)) +
           y2 * (x - x0) * (x - x1) / ((x2 - x0) * (x2 - x1));
  };
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = x0, b = x2;
  double c = b - r * (b - a), d = a + r * (b - a);
  double fc = q(c), fd = q(d);
  for (int it = 0; it < 80; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - r * (b - a);
      fc = q(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + r * (b - a);
      fd = q(d);
    }
  }
  double x = 0.5 * (a + b);
  return {x, q(x)};
}

}  // namespace

MinSensitivity find_min_sensitivity(std::span<const double> phi, std::span<const double> v) {
  if (phi.size() != v.size()) fail(ErrorCode::InvalidArgument, "phase and value arrays differ in length");
  std::size_t best = v.size();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (std::isfinite(v[i]) && (best == v.size() || v[i] < v[best])) best = i;
  if (best == v.size()) fail(ErrorCode::AllInfinite, "no finite sensitivity in the sweep");
  MinSensitivity out{phi[best], v[best], best};
  if (best > 0 && best + 1 < v.size() && std::isfinite(v[best - 1]) && std::isfinite(v[best + 1])) {
    auto [x, y] = refine_quadratic(phi[best - 1], v[best - 1], phi[best], v[best], phi[best + 1], v[best + 1]);
    if (y < out.value && y > 0.0) {
      out.phi = x;
      out.value = y;
    }
  }
  return out;
}

MinSensitivity find_min_sensitivity(std::span<const ObservableSet> rows) {
  std::vector<double> p(rows.size()), v(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    p[i] = rows[i].phi;
    v[i] = rows[i].normalized;
  }
  return find_min_sensitivity(p, v);
}

void assemble_sensitivity(std::vector<ObservableSet>& rows, bool periodic) {
  const std::size_t n = rows.size();
  if (n < 3) fail(ErrorCode::InvalidArgument, "sweep needs at least three phases");
  const double h = rows[1].phi - rows[0].phi;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < n; ++i) {
    auto& r = rows[i];
    std::size_t prev, next;
    if (i > 0 && i + 1 < n) {
      prev = i - 1;
      next = i + 1;
    } else if (periodic) {
      // First and last rows are the same phase one period apart.
      prev = i == 0 ? n - 2 : i - 1;
      next = i + 1 == n ? 1 : i + 1;
    } else {
      r.boundary = true;
      r.dNdphi = r.dphi = r.normalized = nan;
      continue;
    }
    double a = rows[prev].N, b = rows[next].N;
    r.derivative_zero = is_stationary(a, r.N, b);
    r.dNdphi = (b - a) / (2.0 * h);
    r.dphi = r.derivative_zero ? kInfiniteSensitivity : phase_sensitivity(r.varN, r.dNdphi);
    r.normalized = r.derivative_zero ? kInfiniteSensitivity : r.dphi / r.dphi_snl;
  }
}

std::vector<std::pair<double, double>> supersensitivity_bands(std::span<const ObservableSet> rows) {
  std::vector<std::pair<double, double>> bands;
  bool open = false;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool in = std::isfinite(rows[i].normalized) && rows[i].normalized < 1.0;
    if (in && !open) {
      bands.emplace_back(rows[i].phi, rows[i].phi);
      open = true;
    } else if (in) {
      bands.back().second = rows[i].phi;
    } else {
      open = false;
    }
  }
  return bands;
}

}  // namespace su11
