#include <doctest.h>

#include <cmath>
#include <vector>

#include "su11/oracles.hpp"

using namespace su11::oracle;

TEST_CASE("two-mode squeezed vacuum statistics") {
  for (double r : {0.1, 0.5, 0.8}) {
    auto s = two_mode_squeezed_vacuum(r, 30);
    double sh2 = std::pow(std::sinh(r), 2);
    CHECK(s.mean == doctest::Approx(sh2).epsilon(1e-10));
    CHECK(s.variance == doctest::Approx(sh2 * std::pow(std::cosh(r), 2)).epsilon(1e-8));
  }
}

TEST_CASE("independent pairs add") {
  std::vector<double> r{0.2, 0.4};
  auto s = squeezed_pairs(r, 20);
  auto a = two_mode_squeezed_vacuum(0.2, 20), b = two_mode_squeezed_vacuum(0.4, 20);
  CHECK(s.mean == doctest::Approx(a.mean + b.mean));
  CHECK(s.variance == doctest::Approx(a.variance + b.variance));
}

TEST_CASE("Mehler spectrum") {
  auto sep = mehler_eigenvalues(1.0, 1.0, 3);
  CHECK(sep[0] == doctest::Approx(1.0));
  CHECK(sep[1] == doctest::Approx(0.0));
  auto l = mehler_eigenvalues(1.0, 5.0, 200);
  double s = 0;
  for (double v : l) s += v;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-9));
  for (std::size_t k = 1; k < 5; ++k) CHECK(l[k] / l[k - 1] == doctest::Approx(l[1] / l[0]));
  // symmetric under tau sigma -> 1 / (tau sigma)
  auto a = mehler_eigenvalues(1.0, 4.0, 3), b = mehler_eigenvalues(1.0, 0.25, 3);
  CHECK(a[1] == doctest::Approx(b[1]));
}
