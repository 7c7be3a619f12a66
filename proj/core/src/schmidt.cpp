#include "su11/schmidt.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "su11/error.hpp"

namespace su11 {

ModeBasis ModeBasis::dense(Eigen::MatrixXcd modes) {
  ModeBasis b;
  b.point_ = false;
  b.grid_size_ = static_cast<std::size_t>(modes.rows());
  b.dense_ = std::move(modes);
  return b;
}

ModeBasis ModeBasis::point(std::size_t grid_size, std::vector<std::size_t> nodes, std::vector<cplx> values) {
  if (nodes.size() != values.size()) fail(ErrorCode::InvalidArgument, "point basis size mismatch");
  ModeBasis b;
  b.point_ = true;
  b.grid_size_ = grid_size;
  b.nodes_ = std::move(nodes);
  b.values_ = std::move(values);
  b.inverse_.assign(grid_size, b.nodes_.size());
  for (std::size_t k = 0; k < b.nodes_.size(); ++k) b.inverse_.at(b.nodes_[k]) = k;
  return b;
}

std::size_t ModeBasis::count() const {
  return point_ ? nodes_.size() : static_cast<std::size_t>(dense_.cols());
}

cplx ModeBasis::value(std::size_t k, std::size_t node) const {
  if (point_) return nodes_[k] == node ? values_[k] : cplx(0.0, 0.0);
  return dense_(static_cast<Eigen::Index>(node), static_cast<Eigen::Index>(k));
}

Eigen::VectorXcd ModeBasis::mode(std::size_t k) const {
  if (!point_) return dense_.col(static_cast<Eigen::Index>(k));
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid_size_));
  v(static_cast<Eigen::Index>(nodes_[k])) = values_[k];
  return v;
}

std::size_t ModeBasis::mode_at(std::size_t node) const {
  if (!point_) fail(ErrorCode::InvalidArgument, "mode_at needs a point basis");
  return inverse_.at(node);
}

double ModeBasis::mass(std::size_t k, std::span<const double> b) const {
  if (point_) return std::norm(values_[k]) * b[nodes_[k]];
  double s = 0.0;
  for (std::size_t n = 0; n < grid_size_; ++n)
    s += std::norm(dense_(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(k))) * b[n];
  return s;
}

Eigen::MatrixXcd ModeBasis::gram(std::span<const double> b) const {
  const auto K = static_cast<Eigen::Index>(count());
  if (point_) {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(K, K);
    for (Eigen::Index k = 0; k < K; ++k) g(k, k) = std::norm(values_[k]) * b[nodes_[k]];
    return g;
  }
  Eigen::VectorXd bw = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  return dense_.adjoint() * bw.asDiagonal() * dense_;
}

cplx ModeBasis::inner(const ModeBasis& a, std::size_t k, const ModeBasis& b, std::size_t j,
                      std::span<const double> w) {
  if (a.point_) {
    std::size_t n = a.nodes_[k];
    return std::conj(a.values_[k]) * b.value(j, n) * w[n];
  }
  if (b.point_) {
    std::size_t n = b.nodes_[j];
    return std::conj(a.value(k, n)) * b.values_[j] * w[n];
  }
  cplx s = 0.0;
  for (std::size_t n = 0; n < a.grid_size_; ++n) s += std::conj(a.value(k, n)) * b.value(j, n) * w[n];
  return s;
}

namespace {

SchmidtDecomposition decompose_antidiagonal(const JointSpectralAmplitude& jsa, std::size_t k_max) {
  const auto& ws = jsa.grid.signal.weights;
  const auto& wi = jsa.grid.idler.weights;
  const std::size_t n = ws.size();
  std::vector<double> raw(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    raw[j] = std::norm(jsa.values(static_cast<Eigen::Index>(j), 0)) * ws[j];
    total += raw[j];
  }
  if (!(total > 0.0)) fail(ErrorCode::DegenerateJSA, "zero amplitude");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return raw[a] > raw[b]; });

  std::size_t K = (k_max == kAllModes) ? n : std::min(k_max, n);
  SchmidtDecomposition dec;
  std::vector<std::size_t> s_nodes(K), i_nodes(K);
  std::vector<cplx> s_vals(K), i_vals(K);
  dec.eigenvalues.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    std::size_t j = order[k];
    std::size_t m = n - 1 - j;
    dec.eigenvalues[k] = raw[j] / total;
    cplx f = jsa.values(static_cast<Eigen::Index>(j), 0);
    cplx phase = std::abs(f) > 0.0 ? f / std::abs(f) : cplx(1.0, 0.0);
    s_nodes[k] = j;
    s_vals[k] = 1.0 / std::sqrt(ws[j]);
    i_nodes[k] = m;
    i_vals[k] = phase / std::sqrt(wi[m]);
  }
  dec.signal = ModeBasis::point(n, std::move(s_nodes), std::move(s_vals));
  dec.idler = ModeBasis::point(n, std::move(i_nodes), std::move(i_vals));
  double dropped = 0.0;
  for (std::size_t k = K; k < n; ++k) dropped += raw[order[k]] / total;
  dec.tail_mass = std::max(0.0, dropped);
  dec.reconstruction_error = std::sqrt(dec.tail_mass);
  return dec;
}

SchmidtDecomposition decompose_dense(const JointSpectralAmplitude& jsa, std::size_t k_max) {
  const auto& ws = jsa.grid.signal.weights;
  const auto& wi = jsa.grid.idler.weights;
  const auto ns = static_cast<Eigen::Index>(ws.size());
  const auto ni = static_cast<Eigen::Index>(wi.size());
  Eigen::VectorXd sws(ns), swi(ni);
  for (Eigen::Index j = 0; j < ns; ++j) sws(j) = std::sqrt(ws[j]);
  for (Eigen::Index m = 0; m < ni; ++m) swi(m) = std::sqrt(wi[m]);
  Eigen::MatrixXcd M = sws.asDiagonal() * jsa.values * swi.asDiagonal();

  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) fail(ErrorCode::ConvergenceFailure, "singular value decomposition did not converge");
  const Eigen::VectorXd& sigma = svd.singularValues();
  double total = sigma.squaredNorm();
  if (!(total > 0.0)) fail(ErrorCode::DegenerateJSA, "zero amplitude");

  const auto rank = sigma.size();
  const Eigen::Index K = (k_max == kAllModes) ? rank : std::min<Eigen::Index>(static_cast<Eigen::Index>(k_max), rank);
  Eigen::MatrixXcd U = svd.matrixU().leftCols(K);
  Eigen::MatrixXcd V = svd.matrixV().leftCols(K).conjugate();

  SchmidtDecomposition dec;
  dec.eigenvalues.resize(static_cast<std::size_t>(K));
  for (Eigen::Index k = 0; k < K; ++k) {
    dec.eigenvalues[static_cast<std::size_t>(k)] = sigma(k) * sigma(k) / total;
    // Gauge: u_k real and positive at its largest-modulus node.
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index j = 0; j < ns; ++j) {
      double a = std::abs(U(j, k));
      if (a > best) {
        best = a;
        arg = j;
      }
    }
    cplx ph = best > 0.0 ? U(arg, k) / best : cplx(1.0, 0.0);
    U.col(k) *= std::conj(ph);
    V.col(k) *= ph;
    U(arg, k) = cplx(U(arg, k).real(), 0.0);
  }

  Eigen::MatrixXcd R = M;
  for (Eigen::Index k = 0; k < K; ++k) R.noalias() -= sigma(k) * U.col(k) * V.col(k).transpose();
  dec.reconstruction_error = R.norm() / std::sqrt(total);

  double kept = 0.0;
  for (double l : dec.eigenvalues) kept += l;
  dec.tail_mass = std::max(0.0, 1.0 - kept);

  dec.signal = ModeBasis::dense(sws.cwiseInverse().asDiagonal() * U);
  dec.idler = ModeBasis::dense(swi.cwiseInverse().asDiagonal() * V);
  return dec;
}

}  // namespace

SchmidtDecomposition schmidt_decompose(const JointSpectralAmplitude& jsa, std::size_t k_max) {
  if (!jsa.normalized) fail(ErrorCode::InvalidArgument, "schmidt_decompose needs a normalized JSA");
  SchmidtDecomposition dec =
      jsa.layout == JsaLayout::Antidiagonal ? decompose_antidiagonal(jsa, k_max) : decompose_dense(jsa, k_max);
  dec.grid = std::make_shared<const FrequencyGrid>(jsa.grid);
  dec.phi = jsa.phi;
  dec.raw_norm = jsa.raw_norm;
  dec.variant = jsa.variant;
  dec.truncation_warning = dec.tail_mass > kTruncationWarning;
  return dec;
}

GainCalibration calibrate_gain(const SchmidtDecomposition& at_zero, double gamma) {
  if (!(at_zero.raw_norm > 0.0) || at_zero.eigenvalues.empty() || !(at_zero.eigenvalues.front() > 0.0))
    fail(ErrorCode::DegenerateJSA, "calibration needs a nonzero amplitude at phi = 0");
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail(ErrorCode::InvalidArgument, "gain must be finite and >= 0");
  return {gamma, gamma / (std::sqrt(at_zero.eigenvalues.front()) * at_zero.raw_norm)};
}

double schmidt_number(std::span<const double> lambdas, double G) {
  if (lambdas.empty()) fail(ErrorCode::InvalidArgument, "no eigenvalues");
  if (!(G >= 0.0)) fail(ErrorCode::InvalidArgument, "gain must be >= 0");
  double xmax = 0.0;
  for (double l : lambdas) xmax = std::max(xmax, G * std::sqrt(std::max(l, 0.0)));
  std::vector<double> w(lambdas.size());
  if (xmax < 1e-150) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] = std::max(lambdas[k], 0.0);
  } else {
    // sinh^2(x_k) relative to the largest, stable for large gains.
    for (std::size_t k = 0; k < w.size(); ++k) {
      double x = G * std::sqrt(std::max(lambdas[k], 0.0));
      double r = xmax < 20.0 ? std::sinh(x) / std::sinh(xmax)
                             : std::exp(x - xmax) * (-std::expm1(-2.0 * x)) / (-std::expm1(-2.0 * xmax));
      w[k] = r * r;
    }
  }
  double s = 0.0, s2 = 0.0;
  for (double v : w) s += v;
  for (double v : w) s2 += (v / s) * (v / s);
  return 1.0 / s2;
}

TrackedMode track_mode(const ModeBasis& prev, std::size_t k, const ModeBasis& next, std::span<const double> weights) {
  if (prev.is_point() && next.is_point()) {
    std::size_t j = next.mode_at(prev.node_of(k));
    if (j == next.count()) return {0, 0.0};
    return {j, std::abs(ModeBasis::inner(prev, k, next, j, weights))};
  }
  TrackedMode best{0, -1.0};
  for (std::size_t j = 0; j < next.count(); ++j) {
    double o = std::abs(ModeBasis::inner(prev, k, next, j, weights));
    if (o > best.overlap) best = {j, o};
  }
  return best;
}

}  // namespace su11
