#include <cmath>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "su11/oracles.hpp"

namespace su11::oracle {

PhotonStatistics two_mode_squeezed_vacuum(double r, int cutoff) {
  const int d = cutoff + 1;
  const int dim = d * d;
  auto idx = [d](int na, int nb) { return na * d + nb; };
  Eigen::MatrixXd gen = Eigen::MatrixXd::Zero(dim, dim);
  for (int na = 0; na < d; ++na)
    for (int nb = 0; nb < d; ++nb) {
      // a^dag b^dag |na, nb> = sqrt((na+1)(nb+1)) |na+1, nb+1>
      if (na + 1 < d && nb + 1 < d) gen(idx(na + 1, nb + 1), idx(na, nb)) += std::sqrt((na + 1.0) * (nb + 1.0));
      // a b |na, nb> = sqrt(na nb) |na-1, nb-1>
      if (na > 0 && nb > 0) gen(idx(na - 1, nb - 1), idx(na, nb)) -= std::sqrt(static_cast<double>(na) * nb);
    }
  Eigen::MatrixXd U = (r * gen).exp();
  Eigen::VectorXd psi = U.col(idx(0, 0));
  double m1 = 0.0, m2 = 0.0;
  for (int na = 0; na < d; ++na)
    for (int nb = 0; nb < d; ++nb) {
      double p = psi(idx(na, nb)) * psi(idx(na, nb));
      m1 += na * p;
      m2 += static_cast<double>(na) * na * p;
    }
  return {m1, m2 - m1 * m1};
}

PhotonStatistics squeezed_pairs(std::span<const double> r, int cutoff) {
  PhotonStatistics total;
  for (double rk : r) {
    auto s = two_mode_squeezed_vacuum(rk, cutoff);
    total.mean += s.mean;
    total.variance += s.variance;
  }
  return total;
}

}  // namespace su11::oracle
