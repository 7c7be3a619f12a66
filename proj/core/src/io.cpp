#include "su11/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "su11/error.hpp"
#include "su11/observables.hpp"
#include "su11/svg.hpp"
#include "su11/units.hpp"

namespace su11 {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
}

void write_jsa_csv(const std::filesystem::path& path, const JointSpectralAmplitude& jsa) {
  std::ostringstream os;
  os << "omega_s,omega_i,re,im\n";
  const auto& s = jsa.grid.signal.nodes;
  const auto& i = jsa.grid.idler.nodes;
  auto row = [&](std::size_t j, std::size_t m) {
    cplx f = jsa.at(j, m);
    os << format_double(s[j]) << ',' << format_double(i[m]) << ',' << format_double(f.real()) << ','
       << format_double(f.imag()) << '\n';
  };
  if (jsa.layout == JsaLayout::Antidiagonal) {
    for (std::size_t j = 0; j < s.size(); ++j) row(j, jsa.partner(j));
  } else {
    for (std::size_t j = 0; j < s.size(); ++j)
      for (std::size_t m = 0; m < i.size(); ++m) row(j, m);
  }
  write_text(path, os.str());
}

nlohmann::json jsa_sidecar(const JointSpectralAmplitude& jsa) {
  auto axis = [](const FrequencyAxis& a) {
    return nlohmann::json{{"points", a.size()},
                          {"center_rad_s", a.center},
                          {"half_width_rad_s", a.half_width},
                          {"rule", a.rule == QuadratureRule::Trapezoid ? "trapezoid" : "midpoint"}};
  };
  return {{"variant", to_string(jsa.variant)},
          {"phi", jsa.phi},
          {"raw_norm", jsa.raw_norm},
          {"normalized", jsa.normalized},
          {"layout", jsa.layout == JsaLayout::Dense ? "dense" : "antidiagonal"},
          {"signal_axis", axis(jsa.grid.signal)},
          {"idler_axis", axis(jsa.grid.idler)}};
}

std::string jsi_svg(const JointSpectralAmplitude& jsa, const std::string& title) {
  const auto& s = jsa.grid.signal;
  const double c = s.center;
  if (jsa.layout == JsaLayout::Antidiagonal) {
    svg::Series line{"|f(Omega)|^2", {}, {}, "#1f77b4"};
    for (std::size_t j = 0; j < s.size(); ++j) {
      line.x.push_back((s.nodes[j] - c) * 1e-12);
      line.y.push_back(std::norm(jsa.at(j, jsa.partner(j))));
    }
    return svg::line_plot({title + " (CW, antidiagonal)", "Omega = omega_s - omega_p/2 [Trad/s]", "JSI [arb.]"}, {line});
  }
  std::vector<double> x, y;
  for (double v : jsa.grid.idler.nodes) x.push_back((v - jsa.grid.idler.center) * 1e-12);
  for (double v : s.nodes) y.push_back((v - c) * 1e-12);
  Eigen::MatrixXd z = jsa.values.cwiseAbs2();
  return svg::heat_map(x, y, z, {title, "omega_i - omega_p/2 [Trad/s]", "omega_s - omega_p/2 [Trad/s]"});
}

void write_eigenvalues_csv(const std::filesystem::path& path, const SchmidtDecomposition& dec) {
  std::ostringstream os;
  os << "k,lambda\n";
  for (std::size_t k = 0; k < dec.size(); ++k) os << k + 1 << ',' << format_double(dec.eigenvalues[k]) << '\n';
  write_text(path, os.str());
}

void write_modes_csv(const std::filesystem::path& path, const SchmidtDecomposition& dec, std::size_t modes) {
  std::ostringstream os;
  os << "k,omega_s,re_u,im_u,omega_i,re_v,im_v\n";
  const auto& s = dec.grid->signal.nodes;
  const auto& i = dec.grid->idler.nodes;
  std::size_t K = std::min(modes, dec.size());
  for (std::size_t k = 0; k < K; ++k) {
    if (dec.signal.is_point()) {
      std::size_t a = dec.signal.node_of(k), b = dec.idler.node_of(k);
      cplx u = dec.signal.value(k, a), v = dec.idler.value(k, b);
      os << k + 1 << ',' << format_double(s[a]) << ',' << format_double(u.real()) << ',' << format_double(u.imag())
         << ',' << format_double(i[b]) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
      continue;
    }
    for (std::size_t n = 0; n < s.size(); ++n) {
      cplx u = dec.signal.value(k, n), v = dec.idler.value(k, n);
      os << k + 1 << ',' << format_double(s[n]) << ',' << format_double(u.real()) << ',' << format_double(u.imag())
         << ',' << format_double(i[n]) << ',' << format_double(v.real()) << ',' << format_double(v.imag()) << '\n';
    }
  }
  write_text(path, os.str());
}

nlohmann::json schmidt_summary(const SchmidtDecomposition& dec, double G, double gamma) {
  return {{"phi", dec.phi},
          {"variant", to_string(dec.variant)},
          {"modes_retained", dec.size()},
          {"lambda_1", dec.eigenvalues.empty() ? 0.0 : dec.eigenvalues.front()},
          {"schmidt_number_K", schmidt_number(dec, 0.0)},
          {"gain_weighted_K", schmidt_number(dec, G)},
          {"tail_mass", dec.tail_mass},
          {"truncation_warning", dec.truncation_warning},
          {"reconstruction_error", dec.reconstruction_error},
          {"raw_norm", dec.raw_norm},
          {"G", G},
          {"gamma", gamma}};
}

nlohmann::json metadata_json(const SweepMetadata& m) {
  return {{"config_hash", m.config_hash},
          {"observable", m.observable},
          {"gamma", m.gamma},
          {"g0", m.g0},
          {"G0", m.G0},
          {"G1", m.G1},
          {"poling_period_m", m.poling_period},
          {"grid_points", m.grid_points},
          {"modes_retained", m.modes_retained},
          {"max_tail_mass", m.max_tail_mass},
          {"max_truncation_bound", m.max_truncation_bound},
          {"max_reconstruction_error", m.max_reconstruction_error},
          {"threads", m.threads},
          {"wall_seconds", m.wall_seconds}};
}

void write_sweep_csv(const std::filesystem::path& path, const SweepResult& res) {
  std::ostringstream os;
  os << "phi,N,varN,dNdphi,dphi,dphi_snl,normalized";
  bool filt = !res.filtered.empty();
  if (filt) os << ",N_filt,var_filt,snl_filt,norm_filt";
  os << '\n';
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& r = res.rows[i];
    os << format_double(r.phi) << ',' << format_double(r.N) << ',' << format_double(r.varN) << ','
       << format_double(r.dNdphi) << ',' << format_double(r.dphi) << ',' << format_double(r.dphi_snl) << ','
       << format_double(r.normalized);
    if (filt) {
      const auto& f = res.filtered[i];
      os << ',' << format_double(f.N) << ',' << format_double(f.varN) << ',' << format_double(f.dphi_snl) << ','
         << format_double(f.normalized);
    }
    os << '\n';
  }
  write_text(path, os.str());
}

namespace {

nlohmann::json min_json(const std::optional<MinSensitivity>& m) {
  if (!m) return nullptr;
  return {{"phi", m->phi}, {"normalized", m->value}};
}

nlohmann::json bands_json(std::span<const ObservableSet> rows) {
  nlohmann::json a = nlohmann::json::array();
  for (auto [lo, hi] : supersensitivity_bands(rows)) a.push_back({lo, hi});
  return a;
}

}  // namespace

nlohmann::json sweep_summary(const SweepResult& res) {
  nlohmann::json j = {{"gamma", res.meta.gamma},
                      {"minimum", min_json(res.minimum())},
                      {"supersensitivity_bands", bands_json(res.rows)},
                      {"metadata", metadata_json(res.meta)}};
  if (!res.filtered.empty()) {
    j["filtered_minimum"] = min_json(res.filtered_minimum());
    j["filtered_supersensitivity_bands"] = bands_json(res.filtered);
  }
  return j;
}

std::string sweep_svg(const SweepResult& res, const std::string& title, bool with_envelopes) {
  std::vector<svg::Series> s;
  svg::Series main{"unfiltered", {}, {}, "#1f77b4"};
  for (const auto& r : res.rows) {
    main.x.push_back(r.phi);
    main.y.push_back(r.normalized);
  }
  s.push_back(main);
  if (!res.filtered.empty()) {
    svg::Series f{"filtered", {}, {}, "#d62728"};
    for (const auto& r : res.filtered) {
      f.x.push_back(r.phi);
      f.y.push_back(r.normalized);
    }
    s.push_back(f);
  }
  if (with_envelopes) {
    svg::Series lo{"1/(2 sin(phi/2))", {}, {}, "#7f7f7f", true};
    svg::Series hi{"sinh(g/2)/(g sin(phi/2))", {}, {}, "#2ca02c", true};
    for (const auto& r : res.rows) {
      if (r.phi <= 0.0 || r.phi >= kTwoPi) continue;
      lo.x.push_back(r.phi);
      lo.y.push_back(asymptote_low_gain(r.phi));
      hi.x.push_back(r.phi);
      hi.y.push_back(asymptote_high_gain(res.meta.gamma, r.phi));
    }
    s.push_back(lo);
    s.push_back(hi);
  }
  double top = 4.0;
  if (auto m = res.minimum()) top = std::max(top, 4.0 * m->value);
  svg::Axes ax{title, "phi [rad]", "normalized phase sensitivity"};
  ax.logy = true;
  ax.yrange = std::make_pair(0.1 * std::min(1.0, res.minimum() ? res.minimum()->value : 1.0), top);
  ax.hline = 1.0;
  return svg::line_plot(ax, s);
}

void write_gain_csv(const std::filesystem::path& path, const GainSweepResult& res) {
  std::ostringstream os;
  os << "gamma,phi_min,normalized_min,phi_min_filt,normalized_min_filt,trend,N0\n";
  for (const auto& p : res.points) {
    auto v = [](const std::optional<MinSensitivity>& m, bool phi) {
      return m ? format_double(phi ? m->phi : m->value) : std::string("nan");
    };
    os << format_double(p.gamma) << ',' << v(p.minimum, true) << ',' << v(p.minimum, false) << ','
       << v(p.filtered_minimum, true) << ',' << v(p.filtered_minimum, false) << ',' << format_double(p.trend) << ','
       << format_double(p.N0) << '\n';
  }
  write_text(path, os.str());
}

nlohmann::json gain_summary(const GainSweepResult& res) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : res.points)
    pts.push_back({{"gamma", p.gamma},
                   {"minimum", min_json(p.minimum)},
                   {"filtered_minimum", min_json(p.filtered_minimum)},
                   {"trend", p.trend},
                   {"N0", p.N0}});
  nlohmann::json m = metadata_json(res.meta);
  m.erase("gamma");
  return {{"points", pts}, {"metadata", m}};
}

std::string gain_svg(const GainSweepResult& res, const std::string& title) {
  svg::Series u{"min normalized", {}, {}, "#1f77b4"}, f{"min normalized (filtered)", {}, {}, "#d62728"},
      t{"sinh(g/2)/g", {}, {}, "#7f7f7f", true};
  u.markers = f.markers = true;
  for (const auto& p : res.points) {
    if (p.minimum) {
      u.x.push_back(p.gamma);
      u.y.push_back(p.minimum->value);
    }
    if (p.filtered_minimum) {
      f.x.push_back(p.gamma);
      f.y.push_back(p.filtered_minimum->value);
    }
    t.x.push_back(p.gamma);
    t.y.push_back(p.trend);
  }
  std::vector<svg::Series> s{u, t};
  if (!f.x.empty()) s.push_back(f);
  svg::Axes ax{title, "gain gamma", "min normalized phase sensitivity"};
  ax.logx = ax.logy = true;
  ax.hline = 1.0;
  return svg::line_plot(ax, s);
}

}  // namespace su11
