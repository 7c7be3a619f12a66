#include "su11/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "su11/error.hpp"
#include "su11/units.hpp"

namespace su11 {

namespace {

std::string describe(double omega) {
  std::ostringstream os;
  os.precision(6);
  os << omega << " rad/s (" << wavelength_of(omega) * 1e9 << " nm)";
  return os.str();
}

// n^2 > 1 and finite over the whole window, checked on a fixed sampling.
void check_profile(const IndexProfile& p) {
  const auto& w = p.window();
  constexpr int kSamples = 257;
  for (int i = 0; i < kSamples; ++i) {
    double omega = w.min + (w.max - w.min) * i / (kSamples - 1);
    double n = p(omega);
    if (!std::isfinite(n) || n <= 1.0)
      fail(ErrorCode::InvalidArgument, "refractive index must exceed 1 inside the window, got n=" +
                                           std::to_string(n) + " at " + describe(omega));
  }
}

}  // namespace

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) fail(ErrorCode::InvalidArgument, "spline needs >= 2 matching points");
  for (std::size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1])) fail(ErrorCode::InvalidArgument, "table must be strictly increasing in omega");

  m_.assign(n, 0.0);
  if (n == 2) return;
  // Tridiagonal solve for interior second derivatives, natural ends.
  std::vector<double> c(n, 0.0), d(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double h0 = x_[i] - x_[i - 1], h1 = x_[i + 1] - x_[i];
    double a = h0 / 6.0, b = (h0 + h1) / 3.0, cc = h1 / 6.0;
    double r = (y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0;
    double denom = b - a * c[i - 1];
    c[i] = cc / denom;
    d[i] = (r - a * d[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 1;) m_[i] = d[i] - c[i] * m_[i + 1];
}

double CubicSpline::operator()(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  if (i >= x_.size() - 1) i = x_.size() - 2;
  double h = x_[i + 1] - x_[i];
  double a = (x_[i + 1] - x) / h, b = (x - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

IndexProfile::IndexProfile(std::variant<SellmeierCoefficients, CubicSpline> form, FrequencyWindow window)
    : form_(std::move(form)), window_(window) {}

IndexProfile IndexProfile::sellmeier(SellmeierCoefficients coeffs, FrequencyWindow window) {
  if (!(window.max > window.min) || window.min <= 0.0)
    fail(ErrorCode::InvalidArgument, "invalid validity window");
  IndexProfile p(std::move(coeffs), window);
  check_profile(p);
  return p;
}

IndexProfile IndexProfile::table(std::vector<std::pair<double, double>> omega_n) {
  if (omega_n.size() < 2) fail(ErrorCode::InvalidArgument, "table needs at least two points");
  FrequencyWindow w{omega_n.front().first, omega_n.back().first};
  return table(std::move(omega_n), w);
}

IndexProfile IndexProfile::table(std::vector<std::pair<double, double>> omega_n, FrequencyWindow window) {
  std::vector<double> x, y;
  for (auto [w, n] : omega_n) {
    x.push_back(w);
    y.push_back(n);
  }
  CubicSpline spline(std::move(x), std::move(y));
  if (window.min < spline.front() || window.max > spline.back() || !(window.max > window.min))
    fail(ErrorCode::InvalidArgument, "table window must lie inside the tabulated range");
  IndexProfile p(std::move(spline), window);
  check_profile(p);
  return p;
}

double IndexProfile::evaluate(double omega) const {
  if (const auto* s = std::get_if<SellmeierCoefficients>(&form_)) {
    double lam = wavelength_of(omega) * 1e6;
    double l2 = lam * lam;
    double n2 = s->a;
    for (auto [b, c] : s->terms) n2 += b / (l2 - c);
    return std::sqrt(n2);
  }
  return std::get<CubicSpline>(form_)(omega);
}

double IndexProfile::operator()(double omega) const {
  if (!window_.contains(omega))
    fail(ErrorCode::OutOfWindow, describe(omega) + " outside [" + describe(window_.min) + ", " +
                                     describe(window_.max) + "]");
  return evaluate(omega);
}

DispersionModel::DispersionModel(IndexProfile ordinary, IndexProfile extraordinary)
    : ordinary_(std::move(ordinary)), extraordinary_(std::move(extraordinary)) {
  auto w = window();
  if (!(w.max > w.min)) fail(ErrorCode::InvalidArgument, "polarization windows do not overlap");
}

DispersionModel DispersionModel::ktp_default() {
  FrequencyWindow w{angular_frequency(3.54e-6), angular_frequency(0.43e-6)};
  SellmeierCoefficients y{3.45018, {{0.04341, 0.04597}, {16.98825, 39.43799}}};
  SellmeierCoefficients z{4.59423, {{0.06206, 0.04763}, {110.80672, 86.12171}}};
  return {IndexProfile::sellmeier(y, w), IndexProfile::sellmeier(z, w)};
}

DispersionModel DispersionModel::constant(double n_o, double n_e, FrequencyWindow window) {
  return {IndexProfile::table({{window.min, n_o}, {window.max, n_o}}),
          IndexProfile::table({{window.min, n_e}, {window.max, n_e}})};
}

const IndexProfile& DispersionModel::profile(Polarization pol) const {
  return pol == Polarization::Ordinary ? ordinary_ : extraordinary_;
}

FrequencyWindow DispersionModel::window() const {
  return {std::max(ordinary_.window().min, extraordinary_.window().min),
          std::min(ordinary_.window().max, extraordinary_.window().max)};
}

double refractive_index(const DispersionModel& model, Polarization pol, double omega) {
  return model.profile(pol)(omega);
}

double wavevector(const DispersionModel& model, Polarization pol, double omega) {
  return refractive_index(model, pol, omega) * omega / kSpeedOfLight;
}

double group_velocity(const DispersionModel& model, Polarization pol, double omega, double relative_step) {
  const auto& w = model.profile(pol).window();
  if (!w.contains(omega)) fail(ErrorCode::OutOfWindow, describe(omega));
  double h = relative_step * omega;
  if (!w.contains(omega - h) || !w.contains(omega + h))
    fail(ErrorCode::StencilOutOfWindow, "derivative stencil leaves the window at " + describe(omega));
  double dk = wavevector(model, pol, omega + h) - wavevector(model, pol, omega - h);
  return 2.0 * h / dk;
}

double degenerate_mismatch(const DispersionModel& model, double omega_p) {
  // Same association order as delta_beta so that the round trip is exact.
  double half = 0.5 * omega_p;
  return wavevector(model, Polarization::Ordinary, half + half) -
         wavevector(model, Polarization::Ordinary, half) -
         wavevector(model, Polarization::Extraordinary, half);
}

double poling_period(const DispersionModel& model, double pump_wavelength_m) {
  double omega_p = angular_frequency(pump_wavelength_m);
  double bare = degenerate_mismatch(model, omega_p);
  if (!(bare < 0.0))
    fail(ErrorCode::NoSolution, "degenerate mismatch " + std::to_string(bare) +
                                    " rad/m cannot be cancelled by a grating vector");
  double period = kTwoPi / -bare;
  if (period < 1e-6 || period > 1e-3)
    fail(ErrorCode::NoSolution, "poling period " + std::to_string(period) + " m outside [1 um, 1 mm]");
  return period;
}

namespace {

FrequencyWindow window_from_json(const nlohmann::json& j) {
  if (j.contains("window_rad_s")) {
    auto v = j.at("window_rad_s").get<std::vector<double>>();
    if (v.size() != 2) fail(ErrorCode::Config, "window_rad_s needs two entries");
    return {v[0], v[1]};
  }
  if (j.contains("window_wavelength_m")) {
    auto v = j.at("window_wavelength_m").get<std::vector<double>>();
    if (v.size() != 2 || v[0] <= 0 || v[1] <= 0) fail(ErrorCode::Config, "window_wavelength_m needs two positive entries");
    return {angular_frequency(std::max(v[0], v[1])), angular_frequency(std::min(v[0], v[1]))};
  }
  fail(ErrorCode::Config, "sellmeier profile needs window_rad_s or window_wavelength_m");
}

IndexProfile profile_from_json(const nlohmann::json& j, const std::string& name) {
  if (!j.is_object()) fail(ErrorCode::Config, "dispersion." + name + " must be an object");
  std::string type = j.value("type", "");
  if (type == "sellmeier") {
    SellmeierCoefficients c;
    c.a = j.at("a").get<double>();
    for (const auto& t : j.at("terms")) {
      auto v = t.get<std::vector<double>>();
      if (v.size() != 2) fail(ErrorCode::Config, "sellmeier term must be [b, c]");
      c.terms.emplace_back(v[0], v[1]);
    }
    return IndexProfile::sellmeier(std::move(c), window_from_json(j));
  }
  if (type == "table") {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : j.at("points")) {
      auto v = p.get<std::vector<double>>();
      if (v.size() != 2) fail(ErrorCode::Config, "table point must be [omega_rad_s, n]");
      pts.emplace_back(v[0], v[1]);
    }
    if (j.contains("window_rad_s") || j.contains("window_wavelength_m"))
      return IndexProfile::table(std::move(pts), window_from_json(j));
    return IndexProfile::table(std::move(pts));
  }
  if (type == "constant") {
    double n = j.at("n").get<double>();
    FrequencyWindow w = (j.contains("window_rad_s") || j.contains("window_wavelength_m"))
                            ? window_from_json(j)
                            : DispersionModel::ktp_default().window();
    return IndexProfile::table({{w.min, n}, {w.max, n}});
  }
  fail(ErrorCode::Config, "dispersion." + name + ".type must be \"sellmeier\", \"table\" or \"constant\"");
}

}  // namespace

DispersionModel dispersion_from_json(const nlohmann::json& j) {
  try {
    return {profile_from_json(j.at("ordinary"), "ordinary"),
            profile_from_json(j.at("extraordinary"), "extraordinary")};
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, std::string("dispersion: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    fail(ErrorCode::Config, std::string("dispersion: ") + e.what());
  }
}

DispersionModel load_dispersion(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Config, "cannot open dispersion file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::Config, path.string() + ": " + e.what());
  }
  return dispersion_from_json(j);
}

}  // namespace su11
