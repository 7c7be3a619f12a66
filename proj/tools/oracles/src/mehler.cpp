#include <cmath>
#include <stdexcept>

#include "su11/oracles.hpp"

namespace su11::oracle {

// Kernel exp(-a(x^2+y^2) - 2bxy) with a = tau^2/2 + 1/(2 sigma^2), b = tau^2/2 - 1/(2 sigma^2).
// Mehler's formula gives a geometric spectrum with ratio mu = rho^2, where
// rho^2 + 2(a/b) rho + 1 = 0 and |rho| < 1.
std::vector<double> mehler_eigenvalues(double tau, double sigma, std::size_t count) {
  if (!(tau > 0) || !(sigma > 0)) throw std::invalid_argument("tau and sigma must be positive");
  double a = 0.5 * tau * tau + 0.5 / (sigma * sigma);
  double b = 0.5 * tau * tau - 0.5 / (sigma * sigma);
  double mu = 0.0;
  if (b != 0.0) {
    double q = a / b;
    double rho = -q + (q > 0 ? 1.0 : -1.0) * std::sqrt(q * q - 1.0);
    mu = rho * rho;
  }
  std::vector<double> l(count);
  double p = 1.0 - mu;
  for (auto& v : l) {
    v = p;
    p *= mu;
  }
  return l;
}

}  // namespace su11::oracle
