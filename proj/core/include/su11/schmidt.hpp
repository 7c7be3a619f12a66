#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "su11/jsa.hpp"

namespace su11 {

// Mode functions on one frequency axis, orthonormal under the axis quadrature.
// Dense bases hold one column per mode; point bases put each mode on a single node
// (value 1/sqrt(w) up to a phase), which is what the CW antidiagonal produces.
class ModeBasis {
 public:
  ModeBasis() = default;
  static ModeBasis dense(Eigen::MatrixXcd modes);
  static ModeBasis point(std::size_t grid_size, std::vector<std::size_t> nodes, std::vector<cplx> values);

  bool is_point() const { return point_; }
  std::size_t count() const;
  std::size_t grid_size() const { return grid_size_; }

  cplx value(std::size_t k, std::size_t node) const;
  Eigen::VectorXcd mode(std::size_t k) const;
  // Node carrying point mode k.
  std::size_t node_of(std::size_t k) const { return nodes_[k]; }
  // Point mode living on `node`, or count() if none.
  std::size_t mode_at(std::size_t node) const;

  // sum_n |u_k(n)|^2 b(n) for node weights b.
  double mass(std::size_t k, std::span<const double> node_weights) const;
  // G(k, k') = sum_n conj(u_k(n)) u_k'(n) b(n) over all retained modes.
  Eigen::MatrixXcd gram(std::span<const double> node_weights) const;
  // sum_n conj(a_k(n)) b_j(n) w(n)
  static cplx inner(const ModeBasis& a, std::size_t k, const ModeBasis& b, std::size_t j,
                    std::span<const double> weights);

 private:
  bool point_ = false;
  std::size_t grid_size_ = 0;
  Eigen::MatrixXcd dense_;
  std::vector<std::size_t> nodes_;
  std::vector<cplx> values_;
  std::vector<std::size_t> inverse_;
};

struct SchmidtDecomposition {
  std::vector<double> eigenvalues;  // retained, descending, sum over all modes = 1
  ModeBasis signal;
  ModeBasis idler;
  std::shared_ptr<const FrequencyGrid> grid;
  double phi = 0.0;
  double raw_norm = 0.0;
  DeviceVariant variant = DeviceVariant::Compensated;
  double tail_mass = 0.0;  // 1 - sum of retained eigenvalues
  bool truncation_warning = false;
  double reconstruction_error = 0.0;  // ||F - sum sqrt(l) u v|| / ||F|| in the weighted norm

  std::size_t size() const { return eigenvalues.size(); }
  std::span<const double> lambdas() const { return eigenvalues; }
};

inline constexpr std::size_t kAllModes = 0;
inline constexpr std::size_t kDefaultKMax = 64;
inline constexpr double kTruncationWarning = 1e-3;

SchmidtDecomposition schmidt_decompose(const JointSpectralAmplitude& jsa, std::size_t k_max = kDefaultKMax);

struct GainCalibration {
  double gamma = 0.0;
  double g0 = 0.0;
  double gain(double raw_norm) const { return g0 * raw_norm; }
};

GainCalibration calibrate_gain(const SchmidtDecomposition& at_zero, double gamma);

// Gain-weighted Schmidt number; reduces to 1/sum(l^2) as G -> 0.
double schmidt_number(std::span<const double> lambdas, double G);
inline double schmidt_number(const SchmidtDecomposition& dec, double G) { return schmidt_number(dec.lambdas(), G); }

struct TrackedMode {
  std::size_t index = 0;
  double overlap = 0.0;
};

// Mode of `next` with maximal |<prev_k|next_j>|; ties go to the lower index.
TrackedMode track_mode(const ModeBasis& prev, std::size_t k, const ModeBasis& next, std::span<const double> weights);

}  // namespace su11
