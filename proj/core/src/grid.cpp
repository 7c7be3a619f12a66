#include "su11/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>

#include "su11/error.hpp"

namespace su11 {

double FrequencyAxis::spacing() const {
  return size() > 1 ? (nodes.back() - nodes.front()) / static_cast<double>(size() - 1) : 2.0 * half_width;
}

double FrequencyAxis::cell_lo(std::size_t j) const {
  if (rule == QuadratureRule::Midpoint) return nodes[j] - 0.5 * weights[j];
  return j == 0 ? nodes[0] : 0.5 * (nodes[j - 1] + nodes[j]);
}

double FrequencyAxis::cell_hi(std::size_t j) const {
  if (rule == QuadratureRule::Midpoint) return nodes[j] + 0.5 * weights[j];
  return j + 1 == size() ? nodes[j] : 0.5 * (nodes[j] + nodes[j + 1]);
}

std::size_t FrequencyAxis::nearest(double omega) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), omega);
  if (it == nodes.begin()) return 0;
  if (it == nodes.end()) return size() - 1;
  std::size_t j = static_cast<std::size_t>(it - nodes.begin());
  return (omega - nodes[j - 1] <= nodes[j] - omega) ? j - 1 : j;
}

double FrequencyAxis::overlap(std::size_t j, double lo, double hi) const {
  double a = std::max(lo, cell_lo(j));
  double b = std::min(hi, cell_hi(j));
  return b > a ? b - a : 0.0;
}

namespace {

void mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void mix_axis(std::uint64_t& h, const FrequencyAxis& a) {
  std::uint64_t n = a.size();
  mix(h, &n, sizeof n);
  int rule = static_cast<int>(a.rule);
  mix(h, &rule, sizeof rule);
  mix(h, a.nodes.data(), a.nodes.size() * sizeof(double));
  mix(h, a.weights.data(), a.weights.size() * sizeof(double));
}

}  // namespace

std::uint64_t FrequencyGrid::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  mix_axis(h, signal);
  mix_axis(h, idler);
  return h;
}

FrequencyAxis uniform_axis(double center, double half_width, std::size_t n) {
  if (n < 2) fail(ErrorCode::TooCoarse, "axis needs at least two nodes");
  if (!(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "half-width must be positive");
  FrequencyAxis a;
  a.center = center;
  a.half_width = half_width;
  a.rule = QuadratureRule::Trapezoid;
  a.nodes.resize(n);
  a.weights.resize(n);
  double m = static_cast<double>(n - 1);
  double h = 2.0 * half_width / m;
  for (std::size_t j = 0; j < n; ++j) {
    // Integer offsets keep the axis exactly mirror-symmetric in magnitude.
    double k = 2.0 * static_cast<double>(j) - m;
    a.nodes[j] = center + k * half_width / m;
    a.weights[j] = h;
  }
  a.weights.front() = 0.5 * h;
  a.weights.back() = 0.5 * h;
  return a;
}

FrequencyAxis bin_axis(double center, double half_width, double spacing) {
  if (!(spacing > 0.0) || !(half_width > 0.0)) fail(ErrorCode::InvalidArgument, "bin spacing and half-width must be positive");
  auto side = static_cast<std::size_t>(std::floor(half_width / spacing + 1e-9));
  if (side < 1) fail(ErrorCode::TooCoarse, "bin spacing exceeds the half-width");
  std::size_t n = 2 * side + 1;
  FrequencyAxis a;
  a.center = center;
  a.half_width = static_cast<double>(side) * spacing;
  a.rule = QuadratureRule::Midpoint;
  a.nodes.resize(n);
  a.weights.assign(n, spacing);
  for (std::size_t j = 0; j < n; ++j)
    a.nodes[j] = center + (static_cast<double>(j) - static_cast<double>(side)) * spacing;
  return a;
}

FrequencyGrid build_grid(double center, double half_width, std::size_t n_s, std::size_t n_i) {
  if (n_s < kMinGridPoints || n_i < kMinGridPoints)
    fail(ErrorCode::TooCoarse, "grid needs at least " + std::to_string(kMinGridPoints) + " points per axis");
  return {uniform_axis(center, half_width, n_s), uniform_axis(center, half_width, n_i)};
}

FrequencyGrid build_grid(const DispersionModel& model, double center, double half_width, std::size_t n_s,
                         std::size_t n_i) {
  auto w = model.window();
  double lo = center - half_width, hi = center + half_width;
  if (!w.contains(lo) || !w.contains(hi) || !w.contains(lo + hi) || !w.contains(2.0 * hi) || !w.contains(2.0 * lo))
    fail(ErrorCode::OutOfWindow, "grid (or its sum frequencies) leaves the dispersion window");
  return build_grid(center, half_width, n_s, n_i);
}

}  // namespace su11
