#pragma once

#include <cmath>
#include <vector>

#include "su11/config.hpp"
#include "su11/dispersion.hpp"
#include "su11/units.hpp"

namespace su11::test {

inline DispersionModel ktp() { return DispersionModel::ktp_default(); }

inline DispersionModel toy(double n_o = 1.8, double n_e = 1.9) {
  return DispersionModel::constant(n_o, n_e, DispersionModel::ktp_default().window());
}

inline nlohmann::json toy_json(double n_o = 1.8, double n_e = 1.9) {
  return {{"ordinary", {{"type", "constant"}, {"n", n_o}}}, {"extraordinary", {{"type", "constant"}, {"n", n_e}}}};
}

inline double omega_p() { return angular_frequency(766e-9); }

inline RunConfig pulsed_config(std::size_t points = 128) {
  RunConfig c;
  c.regime = PumpRegime::Pulsed;
  c.points = points;
  return c;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace su11::test
