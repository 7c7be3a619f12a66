#include "su11/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "su11/error.hpp"
#include "su11/units.hpp"

namespace su11 {

namespace {

using nlohmann::json;

// Reads fields of one JSON object and reports unknown ones with their dotted path.
class Section {
 public:
  Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(ErrorCode::Config, where() + " must be an object");
  }
  ~Section() noexcept(false) {
    if (std::uncaught_exceptions() > 0) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key())) fail(ErrorCode::Config, "unknown field " + field(it.key()));
  }

  bool has(const std::string& key) {
    seen_.insert(key);
    return j_.contains(key) && !j_.at(key).is_null();
  }
  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }
  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number()) fail(ErrorCode::Config, field(key) + " must be a number");
    double d = v.get<double>();
    if (!std::isfinite(d)) fail(ErrorCode::Config, field(key) + " must be finite");
    return d;
  }
  std::size_t count(const std::string& key, std::size_t fallback) {
    if (!has(key)) return fallback;
    const auto& v = j_.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(ErrorCode::Config, field(key) + " must be a non-negative integer");
    return v.get<std::size_t>();
  }
  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) fail(ErrorCode::Config, field(key) + " must be true or false");
    return j_.at(key).get<bool>();
  }
  std::string text(const std::string& key, const std::string& fallback) {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) fail(ErrorCode::Config, field(key) + " must be a string");
    return j_.at(key).get<std::string>();
  }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }
  std::string where() const { return path_.empty() ? "config" : path_; }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

const json kEmpty = json::object();

const json& sub(Section& s, const std::string& key) { return s.has(key) ? s.raw(key) : kEmpty; }

template <class E>
E pick(const std::string& value, const std::string& field, std::initializer_list<std::pair<const char*, E>> options) {
  std::string allowed;
  for (auto& [name, e] : options) {
    if (value == name) return e;
    allowed += allowed.empty() ? name : std::string(", ") + name;
  }
  fail(ErrorCode::Config, field + " must be one of: " + allowed + " (got \"" + value + "\")");
}

}  // namespace

double RunConfig::effective_half_width() const {
  if (half_width) return *half_width;
  return regime == PumpRegime::CW ? kDefaultCwHalfWidth : kDefaultPulsedHalfWidth;
}

void RunConfig::validate() const {
  auto bad = [](const std::string& m) { fail(ErrorCode::Config, m); };
  if (!(length > 0.0)) bad("device.L_m must be positive");
  if (!(gap >= 0.0)) bad("device.gap_m must be >= 0");
  if (poling_period && !(*poling_period > 0.0)) bad("device.poling_period_m must be positive");
  if (!(pump_wavelength > 0.0)) bad("pump.wavelength_m must be positive");
  if (regime == PumpRegime::Pulsed && !(tau > 0.0)) bad("pump.tau_s must be positive");
  if (!(effective_half_width() > 0.0)) bad("grid.half_width_rad_s must be positive");
  if (points < 16) bad("grid.points must be >= 16");
  if (!(mode_spacing > 0.0)) bad("grid.cw_mode_spacing_rad_s must be positive");
  if (subsamples < 1) bad("grid.cw_subsamples must be >= 1");
  if (phi_count < 33) bad("sweep.phi_count must be >= 33");
  if (!(phi_stop > phi_start)) bad("sweep.phi_stop must exceed sweep.phi_start");
  if (gammas.empty()) bad("sweep.gammas must not be empty");
  for (double g : gammas)
    if (!(g > 0.0)) bad("sweep.gammas entries must be > 0");
  if (!(snl_gain_ratio > 0.0)) bad("sweep.snl_gain_ratio must be positive");
  if (filter_half_width && !(*filter_half_width > 0.0)) bad("filter.half_width_rad_s must be positive");
  if (!(convergence_threshold > 0.0)) bad("convergence.threshold must be positive");
  try {
    validate_seeding(seed, detection);
  } catch (const Error& e) {
    bad(std::string("seed/detection: ") + e.what());
  }
  if (filter_half_width && (seed.kind != SeedKind::Vacuum || detection.kind != DetectionKind::Direct))
    bad("filter is only modelled for vacuum input with direct detection");
}

RunConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  RunConfig c;
  c.base_dir = base_dir;
  {
    Section root(j, "");
    if (root.has("dispersion")) c.dispersion = root.raw("dispersion");
    c.output_dir = root.text("output_dir", c.output_dir);
    {
      Section s(sub(root, "device"), "device");
      c.variant = pick<DeviceVariant>(s.text("variant", to_string(c.variant)), s.field("variant"),
                                      {{"noncompensated", DeviceVariant::NonCompensated},
                                       {"compensated", DeviceVariant::Compensated},
                                       {"single_section", DeviceVariant::SingleSection}});
      c.length = s.number("L_m", c.length);
      c.gap = s.number("gap_m", c.gap);
      if (s.has("poling_period_m")) {
        const auto& v = s.raw("poling_period_m");
        if (v.is_string() && v.get<std::string>() == "auto")
          c.poling_period.reset();
        else if (v.is_number())
          c.poling_period = v.get<double>();
        else
          fail(ErrorCode::Config, "device.poling_period_m must be a number or \"auto\"");
      }
      c.grating_phase = s.number("relative_grating_phase", c.grating_phase);
      c.include_gap_generation = s.boolean("include_gap_generation", c.include_gap_generation);
    }
    {
      Section s(sub(root, "pump"), "pump");
      c.pump_wavelength = s.number("wavelength_m", c.pump_wavelength);
      c.regime = pick<PumpRegime>(s.text("regime", to_string(c.regime)), s.field("regime"),
                                  {{"cw", PumpRegime::CW}, {"pulsed", PumpRegime::Pulsed}});
      c.tau = s.number("tau_s", c.tau);
    }
    {
      Section s(sub(root, "modulator"), "modulator");
      c.chirp_slope = s.number("chirp_slope", c.chirp_slope);
    }
    {
      Section s(sub(root, "grid"), "grid");
      if (s.has("half_width_rad_s")) {
        const auto& v = s.raw("half_width_rad_s");
        if (v.is_number())
          c.half_width = v.get<double>();
        else if (!(v.is_string() && v.get<std::string>() == "auto"))
          fail(ErrorCode::Config, "grid.half_width_rad_s must be a number or \"auto\"");
      }
      c.points = s.count("points", c.points);
      c.mode_spacing = s.number("cw_mode_spacing_rad_s", c.mode_spacing);
      c.subsamples = static_cast<int>(s.count("cw_subsamples", static_cast<std::size_t>(c.subsamples)));
    }
    {
      Section s(sub(root, "schmidt"), "schmidt");
      c.k_max = s.count("k_max", c.k_max);
      c.tracking = pick<TrackingPolicy>(s.text("tracking", "overlap"), s.field("tracking"),
                                        {{"overlap", TrackingPolicy::Overlap}, {"argmax", TrackingPolicy::Argmax}});
    }
    {
      Section s(sub(root, "sweep"), "sweep");
      c.phi_start = s.number("phi_start", c.phi_start);
      c.phi_stop = s.number("phi_stop", c.phi_stop);
      c.phi_count = s.count("phi_count", c.phi_count);
      if (s.has("gammas")) {
        const auto& g = s.raw("gammas");
        if (!g.is_array()) fail(ErrorCode::Config, "sweep.gammas must be an array of numbers");
        c.gammas.clear();
        for (const auto& v : g) {
          if (!v.is_number()) fail(ErrorCode::Config, "sweep.gammas must be an array of numbers");
          c.gammas.push_back(v.get<double>());
        }
      }
      c.snl_gain_ratio = s.number("snl_gain_ratio", c.snl_gain_ratio);
    }
    if (root.has("filter")) {
      Section s(root.raw("filter"), "filter");
      c.filter_half_width = s.number("half_width_rad_s", kDefaultFilterHalfWidth);
    }
    {
      Section s(sub(root, "seed"), "seed");
      c.seed.kind = pick<SeedKind>(s.text("kind", "vacuum"), s.field("kind"),
                                   {{"vacuum", SeedKind::Vacuum},
                                    {"single_photon_first_mode", SeedKind::SinglePhotonFirstMode},
                                    {"coherent_first_mode", SeedKind::CoherentFirstMode},
                                    {"coherent_plane_wave", SeedKind::CoherentPlaneWave}});
      c.seed.alpha2 = s.number("alpha2", c.seed.alpha2);
    }
    {
      Section s(sub(root, "detection"), "detection");
      c.detection.kind = pick<DetectionKind>(s.text("kind", "direct"), s.field("kind"),
                                             {{"direct", DetectionKind::Direct}, {"homodyne", DetectionKind::Homodyne}});
      c.detection.theta_a = s.number("theta_a", c.detection.theta_a);
      c.detection.beta_lo = s.number("beta_lo", c.detection.beta_lo);
    }
    {
      Section s(sub(root, "convergence"), "convergence");
      c.convergence_threshold = s.number("threshold", c.convergence_threshold);
      c.convergence_gate = s.boolean("gate", c.convergence_gate);
    }
  }
  c.validate();
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["dispersion"] = c.dispersion;
  j["device"] = {{"variant", to_string(c.variant)},
                 {"L_m", c.length},
                 {"gap_m", c.gap},
                 {"poling_period_m", c.poling_period ? json(*c.poling_period) : json("auto")},
                 {"relative_grating_phase", c.grating_phase},
                 {"include_gap_generation", c.include_gap_generation}};
  j["pump"] = {{"wavelength_m", c.pump_wavelength}, {"regime", to_string(c.regime)}, {"tau_s", c.tau}};
  j["modulator"] = {{"chirp_slope", c.chirp_slope}};
  j["grid"] = {{"half_width_rad_s", c.half_width ? json(*c.half_width) : json("auto")},
               {"points", c.points},
               {"cw_mode_spacing_rad_s", c.mode_spacing},
               {"cw_subsamples", c.subsamples}};
  j["schmidt"] = {{"k_max", c.k_max}, {"tracking", c.tracking == TrackingPolicy::Overlap ? "overlap" : "argmax"}};
  j["sweep"] = {{"phi_start", c.phi_start},
                {"phi_stop", c.phi_stop},
                {"phi_count", c.phi_count},
                {"gammas", c.gammas},
                {"snl_gain_ratio", c.snl_gain_ratio}};
  j["filter"] = c.filter_half_width ? json{{"half_width_rad_s", *c.filter_half_width}} : json(nullptr);
  j["seed"] = {{"kind", to_string(c.seed.kind)}, {"alpha2", c.seed.alpha2}};
  j["detection"] = {{"kind", to_string(c.detection.kind)},
                    {"theta_a", c.detection.theta_a},
                    {"beta_lo", c.detection.beta_lo}};
  j["convergence"] = {{"threshold", c.convergence_threshold}, {"gate", c.convergence_gate}};
  j["output_dir"] = c.output_dir;
  return j;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Config, "cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Config, path.string() + ": " + e.what());
  }
  return config_from_json(j, path.parent_path());
}

void apply_override(json& doc, const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) fail(ErrorCode::Config, "override must look like a.b=value: " + assignment);
  std::string path = assignment.substr(0, eq), text = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(text);
  } catch (const json::parse_error&) {
    value = text;
  }
  json* node = &doc;
  std::size_t start = 0;
  for (;;) {
    auto dot = path.find('.', start);
    std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) fail(ErrorCode::Config, "empty key in override " + assignment);
    if (!node->is_object()) *node = json::object();
    if (dot == std::string::npos) {
      (*node)[key] = value;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

std::uint64_t config_hash(const RunConfig& cfg) {
  json j = to_json(cfg);
  j.erase("output_dir");
  std::string s = j.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

DispersionModel resolve_dispersion(const RunConfig& cfg) {
  const auto& d = cfg.dispersion;
  if (d.is_string()) {
    if (d.get<std::string>() == "default") return DispersionModel::ktp_default();
    fail(ErrorCode::Config, "dispersion must be \"default\", {\"file\": ...} or an inline model");
  }
  if (d.is_object() && d.contains("file")) {
    std::filesystem::path p = d.at("file").get<std::string>();
    if (p.is_relative() && !cfg.base_dir.empty()) p = cfg.base_dir / p;
    return load_dispersion(p);
  }
  if (d.is_object()) return dispersion_from_json(d);
  fail(ErrorCode::Config, "dispersion must be \"default\", {\"file\": ...} or an inline model");
}

}  // namespace su11
