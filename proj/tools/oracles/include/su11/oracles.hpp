#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace su11::oracle {

struct PhotonStatistics {
  double mean = 0.0;
  double variance = 0.0;
};

// exp(r (a^dag b^dag - a b)) |0,0> in a Fock space truncated at `cutoff` photons per mode,
// by dense matrix exponential. Statistics of mode a.
PhotonStatistics two_mode_squeezed_vacuum(double r, int cutoff = 12);

// Independent pairs with squeezing r_k; signal photon number summed over the pairs.
PhotonStatistics squeezed_pairs(std::span<const double> r, int cutoff = 12);

// Schmidt eigenvalues of exp(-(x+y)^2 tau^2/2 - (x-y)^2/(2 sigma^2)) from the Mehler kernel.
std::vector<double> mehler_eigenvalues(double tau, double sigma, std::size_t count);

}  // namespace su11::oracle
