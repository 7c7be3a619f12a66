#include "su11/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "su11/acceptance.hpp"
#include "su11/config.hpp"
#include "su11/error.hpp"
#include "su11/io.hpp"
#include "su11/svg.hpp"
#include "su11/sweep.hpp"

namespace su11::cli {

namespace fs = std::filesystem;

std::vector<double> parse_gammas(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t pos = 0;
      double v = std::stod(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      fail(ErrorCode::Config, "bad number '" + s + "' in gamma list '" + text + "'");
    }
  };
  std::vector<double> out;
  if (text.find(':') == std::string::npos) {
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) out.push_back(number(tok));
  } else {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
    bool log = !parts.empty() && parts.back() == "log";
    if (log) parts.pop_back();
    if (parts.size() == 2 && !log) log = true;
    if (parts.size() < 2 || parts.size() > 3) fail(ErrorCode::Config, "gamma range must be a:b[:n][:log], got '" + text + "'");
    double a = number(parts[0]), b = number(parts[1]);
    std::size_t n = parts.size() == 3 ? static_cast<std::size_t>(number(parts[2])) : 25;
    if (n < 2 || !(b > a) || (log && !(a > 0))) fail(ErrorCode::Config, "empty or invalid gamma range '" + text + "'");
    for (std::size_t i = 0; i < n; ++i) {
      double t = static_cast<double>(i) / static_cast<double>(n - 1);
      out.push_back(log ? a * std::pow(b / a, t) : a + (b - a) * t);
    }
    out.back() = b;
  }
  if (out.empty()) fail(ErrorCode::Config, "empty gamma list");
  for (double g : out)
    if (!(g > 0) || !std::isfinite(g)) fail(ErrorCode::Config, "gamma must be positive and finite");
  return out;
}

namespace {

struct Common {
  std::string config;
  std::vector<std::string> sets;
  std::string out;
  bool verbose = false;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("-c,--config", c.config, "JSON run configuration");
  app->add_option("-s,--set", c.sets, "Override a field, e.g. device.L_m=0.01 (repeatable)");
  app->add_option("-o,--out", c.out, "Output directory (overrides output_dir)");
  app->add_flag("-v,--verbose", c.verbose, "Progress on stderr");
}

nlohmann::json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) fail(ErrorCode::Config, "cannot open config file " + p.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Config, p.string() + ": " + e.what());
  }
}

// Parses and validates the whole configuration, dispersion included, before any compute.
RunConfig load(const std::string& path, const std::vector<std::string>& sets, const std::string& out) {
  nlohmann::json doc = nlohmann::json::object();
  fs::path base = fs::current_path();
  if (!path.empty()) {
    doc = read_json(path);
    base = fs::absolute(path).parent_path();
  }
  for (const auto& s : sets) apply_override(doc, s);
  RunConfig cfg = config_from_json(doc, base);
  if (!out.empty()) cfg.output_dir = out;
  try {
    cfg.validate();
    resolve_dispersion(cfg);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Config) throw;
    fail(ErrorCode::Config, e.what());
  }
  return cfg;
}

RunConfig load(const Common& c) { return load(c.config, c.sets, c.out); }

fs::path output_dir(const RunConfig& cfg) {
  fs::path d = cfg.output_dir;
  fs::create_directories(d);
  return d;
}

std::string tag(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

void write_config(const fs::path& dir, const RunConfig& cfg, const std::string& hash) {
  write_text(dir / ("config-" + hash + ".json"), to_json(cfg).dump(2) + "\n");
}

std::optional<double> parse_filter(const std::string& f) {
  if (f.empty() || f == "none") return std::nullopt;
  if (f == "default") return kDefaultFilterHalfWidth;
  try {
    std::size_t pos = 0;
    double v = std::stod(f, &pos);
    if (pos == f.size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::Config, "--filter takes 'default', 'none' or a positive half-width in rad/s, got '" + f + "'");
}

int cmd_jsa(const Common& c, double phi, std::ostream& out) {
  RunConfig cfg = load(c);
  SweepEngine e(cfg);
  auto jsa = e.build_jsa(phi);
  auto dir = output_dir(cfg);
  std::string h = hash_hex(e.hash());
  std::string stem = "jsa-" + h + "-phi" + tag(phi);
  write_jsa_csv(dir / (stem + ".csv"), jsa);
  auto side = jsa_sidecar(jsa);
  side["config_hash"] = h;
  side["poling_period_m"] = e.geometry().poling_period;
  write_text(dir / (stem + ".json"), side.dump(2) + "\n");
  write_text(dir / (stem + ".svg"), jsi_svg(jsa, std::string("JSI, ") + to_string(cfg.variant) + ", phi=" + tag(phi)));
  write_config(dir, cfg, h);
  out << "wrote " << (dir / stem).string() << ".{csv,json,svg}\n";
  return kExitOk;
}

int cmd_schmidt(const Common& c, double phi, std::optional<double> gamma, std::size_t modes, std::ostream& out) {
  RunConfig cfg = load(c);
  SweepEngine e(cfg);
  double g = gamma.value_or(cfg.gammas.front());
  auto d0 = e.decomposition(0.0);
  auto d = e.decomposition(phi);
  double G = calibrate_gain(*d0, g).gain(d->raw_norm);
  auto dir = output_dir(cfg);
  std::string h = hash_hex(e.hash());
  std::string stem = "schmidt-" + h + "-phi" + tag(phi);
  write_eigenvalues_csv(dir / (stem + "-eigenvalues.csv"), *d);
  write_modes_csv(dir / (stem + "-modes.csv"), *d, modes);
  auto sum = schmidt_summary(*d, G, g);
  sum["config_hash"] = h;
  write_text(dir / (stem + ".json"), sum.dump(2) + "\n");
  svg::Series s{"lambda_k", {}, {}, "#1f77b4", false, true};
  for (std::size_t k = 0; k < std::min<std::size_t>(d->size(), 64); ++k) {
    s.x.push_back(static_cast<double>(k + 1));
    s.y.push_back(d->eigenvalues[k]);
  }
  write_text(dir / (stem + ".svg"), svg::line_plot({"Schmidt eigenvalues, phi=" + tag(phi), "k", "lambda_k", false, true}, {s}));
  write_config(dir, cfg, h);
  out << "K = " << schmidt_number(*d, G) << ", lambda_1 = " << d->eigenvalues.front() << ", tail = " << d->tail_mass << "\n";
  out << "wrote " << (dir / stem).string() << "{-eigenvalues.csv,-modes.csv,.json,.svg}\n";
  return kExitOk;
}

bool run_gate(const RunConfig& cfg, double gamma, bool allow, std::ostream& out, std::ostream& err, nlohmann::json& meta) {
  auto rep = convergence_gate(cfg, gamma);
  meta["convergence_gate"] = {{"passed", rep.passed}, {"max_drift", rep.max_drift}, {"threshold", rep.threshold},
                              {"coarse", rep.coarse_resolution}, {"fine", rep.fine_resolution}};
  if (rep.passed) {
    out << "convergence gate: " << rep.summary();
    return true;
  }
  if (!allow) fail(ErrorCode::ConvergenceGateFailed, rep.summary());
  err << "warning: results flagged as unconverged\n" << rep.summary();
  return false;
}

int cmd_sweep(const Common& c, const std::string& mode, std::optional<double> gamma, const std::string& gammas,
              const std::string& filter, bool gate, bool allow_unconverged, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(c);
  if (!filter.empty()) cfg.filter_half_width = parse_filter(filter);
  if (mode != "phase" && mode != "gain") fail(ErrorCode::Config, "--mode must be phase or gain");
  SweepEngine e(cfg);
  auto dir = output_dir(cfg);
  std::string h = hash_hex(e.hash());
  nlohmann::json gate_meta = nlohmann::json::object();
  if (mode == "phase") {
    double g = gamma.value_or(cfg.gammas.front());
    if (gate || cfg.convergence_gate) run_gate(cfg, g, allow_unconverged, out, err, gate_meta);
    auto res = run_phase_sweep(e, g);
    std::string stem = "sweep-" + h + "-gamma" + tag(g);
    write_sweep_csv(dir / (stem + ".csv"), res);
    auto sum = sweep_summary(res);
    sum.update(gate_meta);
    write_text(dir / (stem + ".json"), sum.dump(2) + "\n");
    write_text(dir / (stem + ".svg"), sweep_svg(res, "normalized phase sensitivity, gamma=" + tag(g), cfg.seed.kind == SeedKind::Vacuum));
    write_config(dir, cfg, h);
    if (auto m = res.minimum()) out << "min normalized dphi = " << m->value << " at phi = " << m->phi << "\n";
    if (auto m = res.filtered_minimum()) out << "filtered min normalized dphi = " << m->value << " at phi = " << m->phi << "\n";
    out << "wrote " << (dir / stem).string() << ".{csv,json,svg}\n";
  } else {
    auto gs = gammas.empty() ? cfg.gammas : parse_gammas(gammas);
    if (gate || cfg.convergence_gate) run_gate(cfg, gs.back(), allow_unconverged, out, err, gate_meta);
    auto res = run_gain_sweep(e, gs);
    std::string stem = "gain-" + h;
    write_gain_csv(dir / (stem + ".csv"), res);
    auto sum = gain_summary(res);
    sum.update(gate_meta);
    write_text(dir / (stem + ".json"), sum.dump(2) + "\n");
    write_text(dir / (stem + ".svg"), gain_svg(res, "minimum normalized phase sensitivity"));
    write_config(dir, cfg, h);
    for (const auto& p : res.points) {
      out << "gamma " << p.gamma << ": min " << (p.minimum ? p.minimum->value : kInfiniteSensitivity);
      if (p.filtered_minimum) out << ", filtered " << p.filtered_minimum->value;
      out << "\n";
    }
    out << "wrote " << (dir / stem).string() << ".{csv,json,svg}\n";
  }
  return kExitOk;
}

int cmd_validate(const Common& c, const std::vector<int>& only, std::ostream& out, std::ostream& err) {
  RunConfig cfg = load(c);
  validation::Options opt{cfg, {}};
  if (c.verbose) opt.progress = [&err](const std::string& s) { err << s << "\n"; };
  auto results = validation::run_acceptance(opt, only);
  for (const auto& r : results) out << validation::format_result(r) << "\n";
  bool ok = validation::all_passed(results);
  std::size_t npass = 0;
  for (const auto& r : results) npass += r.passed();
  out << npass << "/" << results.size() << " criteria passed\n";
  return ok ? kExitOk : kExitCompute;
}

int cmd_compare(const Common& c, const std::string& with, const std::vector<std::string>& with_sets, std::optional<double> gamma,
                std::ostream& out) {
  RunConfig a = load(c);
  RunConfig b;
  if (!with.empty()) {
    b = load(with, with_sets, c.out);
  } else {
    if (with_sets.empty()) fail(ErrorCode::Config, "compare needs --with FILE and/or --with-set overrides");
    std::vector<std::string> sets = c.sets;
    sets.insert(sets.end(), with_sets.begin(), with_sets.end());
    b = load(c.config, sets, c.out);
  }
  double g = gamma.value_or(a.gammas.front());
  SweepEngine ea(a), eb(b);
  auto ra = run_phase_sweep(ea, g);
  auto rb = run_phase_sweep(eb, g);
  auto dir = output_dir(a);
  std::string ha = hash_hex(ea.hash()), hb = hash_hex(eb.hash());
  std::string stem = "compare-" + ha + "-" + hb + "-gamma" + tag(g);

  std::ostringstream csv;
  csv << "phi_a,N_a,normalized_a,phi_b,N_b,normalized_b\n";
  for (std::size_t i = 0; i < std::max(ra.rows.size(), rb.rows.size()); ++i) {
    auto cell = [](const std::vector<ObservableSet>& rows, std::size_t k) {
      if (k >= rows.size()) return std::string(",,");
      return format_double(rows[k].phi) + "," + format_double(rows[k].N) + "," + format_double(rows[k].normalized);
    };
    csv << cell(ra.rows, i) << "," << cell(rb.rows, i) << "\n";
  }
  write_text(dir / (stem + ".csv"), csv.str());

  nlohmann::json ja = to_json(a), jb = to_json(b);
  ja.erase("output_dir");
  jb.erase("output_dir");
  auto min_json = [](const SweepResult& r) -> nlohmann::json {
    auto m = r.minimum();
    if (!m) return nullptr;
    return {{"phi", m->phi}, {"value", m->value}};
  };
  nlohmann::json sum = {{"gamma", g},
                        {"a", {{"config_hash", ha}, {"minimum", min_json(ra)}, {"N0", ra.rows.front().N}}},
                        {"b", {{"config_hash", hb}, {"minimum", min_json(rb)}, {"N0", rb.rows.front().N}}},
                        {"differences", nlohmann::json::diff(ja, jb)}};
  write_text(dir / (stem + ".json"), sum.dump(2) + "\n");

  svg::Series sa{"a " + ha, {}, {}, "#1f77b4"}, sb{"b " + hb, {}, {}, "#d62728"};
  for (const auto& r : ra.rows) sa.x.push_back(r.phi), sa.y.push_back(r.normalized);
  for (const auto& r : rb.rows) sb.x.push_back(r.phi), sb.y.push_back(r.normalized);
  write_text(dir / (stem + ".svg"),
             svg::line_plot({"normalized phase sensitivity, gamma=" + tag(g), "phi (rad)", "normalized dphi", false, true, std::nullopt, 1.0},
                            {sa, sb}));
  write_config(dir, a, ha);
  write_config(dir, b, hb);
  auto show = [&](const char* name, const SweepResult& r) {
    auto m = r.minimum();
    out << name << ": N(0) = " << r.rows.front().N << ", min normalized dphi = " << (m ? m->value : kInfiniteSensitivity);
    if (m) out << " at phi = " << m->phi;
    out << "\n";
  };
  show("a", ra);
  show("b", rb);
  out << "wrote " << (dir / stem).string() << ".{csv,json,svg}\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spectrally multimode SU(1,1) interferometer simulator", "su11"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "su11 0.1.0");

  Common common;
  double phi = 0.0;
  std::optional<double> gamma;
  std::size_t modes = 8;
  std::string mode = "phase", gammas, filter, with;
  std::vector<std::string> with_sets;
  std::vector<int> only;
  bool gate = false, allow_unconverged = false;

  auto* jsa = app.add_subcommand("jsa", "Joint spectral amplitude at one phase: CSV dump, JSON sidecar, JSI plot");
  add_common(jsa, common);
  jsa->add_option("--phi", phi, "Modulator phase (rad)");

  auto* sch = app.add_subcommand("schmidt", "Schmidt decomposition at one phase");
  add_common(sch, common);
  sch->add_option("--phi", phi, "Modulator phase (rad)");
  sch->add_option("--gamma", gamma, "Gain for the Schmidt number (default: first sweep gamma)");
  sch->add_option("--modes", modes, "Mode functions to write")->check(CLI::PositiveNumber);

  auto* sw = app.add_subcommand("sweep", "Phase sweep at one gain, or minimum sensitivity versus gain");
  add_common(sw, common);
  sw->add_option("--mode", mode, "phase or gain")->check(CLI::IsMember({"phase", "gain"}));
  sw->add_option("--gamma", gamma, "Gain for a phase sweep");
  sw->add_option("--gammas", gammas, "Gains for a gain sweep: a:b[:n][:log] or a comma list");
  sw->add_option("--filter", filter, "Signal filter: default (2.855e12 rad/s), none, or half-width in rad/s");
  sw->add_flag("--gate", gate, "Run the grid-refinement gate first");
  sw->add_flag("--allow-unconverged", allow_unconverged, "Keep going when the gate fails, flagging the result");

  auto* val = app.add_subcommand("validate", "Run the acceptance suite against the configured device");
  add_common(val, common);
  val->add_option("--only", only, "Criterion ids to run (default all)")->delimiter(',');

  auto* cmp = app.add_subcommand("compare", "Phase sweeps of two configurations side by side");
  add_common(cmp, common);
  cmp->add_option("--with", with, "Second configuration file");
  cmp->add_option("--with-set", with_sets, "Override applied to the second configuration (repeatable)");
  cmp->add_option("--gamma", gamma, "Gain (default: first sweep gamma of the first configuration)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*jsa) return cmd_jsa(common, phi, out);
    if (*sch) return cmd_schmidt(common, phi, gamma, modes, out);
    if (*sw) return cmd_sweep(common, mode, gamma, gammas, filter, gate, allow_unconverged, out, err);
    if (*val) return cmd_validate(common, only, out, err);
    if (*cmp) return cmd_compare(common, with, with_sets, gamma, out);
  } catch (const Error& e) {
    err << "su11: " << e.what() << "\n";
    return e.code() == ErrorCode::Config ? kExitConfig : kExitCompute;
  } catch (const std::exception& e) {
    err << "su11: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitCompute;
}

}  // namespace su11::cli
