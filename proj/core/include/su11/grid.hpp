#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "su11/dispersion.hpp"

namespace su11 {

enum class QuadratureRule { Trapezoid, Midpoint };

// One frequency axis with quadrature weights. Node j owns the cell
// [cell_lo(j), cell_hi(j)] whose length is its weight.
struct FrequencyAxis {
  std::vector<double> nodes;    // rad/s, strictly increasing
  std::vector<double> weights;  // rad/s
  double center = 0.0;
  double half_width = 0.0;      // nodes span [center - half_width, center + half_width]
  QuadratureRule rule = QuadratureRule::Trapezoid;

  std::size_t size() const { return nodes.size(); }
  double spacing() const;
  double cell_lo(std::size_t j) const;
  double cell_hi(std::size_t j) const;
  double extent_lo() const { return cell_lo(0); }
  double extent_hi() const { return cell_hi(size() - 1); }
  std::size_t nearest(double omega) const;
  // Length of the overlap of cell j with [lo, hi].
  double overlap(std::size_t j, double lo, double hi) const;
};

struct FrequencyGrid {
  FrequencyAxis signal;
  FrequencyAxis idler;
  std::uint64_t hash() const;
};

// Uniform trapezoid axis with n >= 2 nodes.
FrequencyAxis uniform_axis(double center, double half_width, std::size_t n);

// Uniform bins of the given width centred on `center`; odd count so the centre is a node.
FrequencyAxis bin_axis(double center, double half_width, double spacing);

inline constexpr std::size_t kMinGridPoints = 16;
FrequencyGrid build_grid(double center, double half_width, std::size_t n_s, std::size_t n_i);
// Same, also requiring all signal, idler and pump frequencies inside the model window.
FrequencyGrid build_grid(const DispersionModel& model, double center, double half_width, std::size_t n_s,
                         std::size_t n_i);

}  // namespace su11
