#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "su11/config.hpp"
#include "su11/error.hpp"
#include "support.hpp"

using namespace su11;
using nlohmann::json;

namespace {

std::string config_error(const json& j) {
  try {
    config_from_json(j);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Config);
    return e.what();
  }
  FAIL("no error for " << j.dump());
  return {};
}

}  // namespace

TEST_CASE("defaults round trip") {
  RunConfig a;
  auto b = config_from_json(to_json(a));
  CHECK(config_hash(a) == config_hash(b));
  CHECK(to_json(a) == to_json(b));

  RunConfig c;
  c.regime = PumpRegime::Pulsed;
  c.filter_half_width = 1e12;
  c.poling_period = 4.5e-5;
  c.gammas = {0.1, 2.0};
  auto d = config_from_json(to_json(c));
  CHECK(config_hash(c) == config_hash(d));
  CHECK(*d.filter_half_width == 1e12);
  CHECK(*d.poling_period == 4.5e-5);
  CHECK(config_hash(c) != config_hash(a));
}

TEST_CASE("hash ignores the output directory") {
  RunConfig a, b;
  b.output_dir = "elsewhere";
  CHECK(config_hash(a) == config_hash(b));
  b.gap = 11e-3;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(hash_hex(0xabcULL) == "0000000000000abc");
}

TEST_CASE("errors name the offending field") {
  CHECK(config_error({{"device", {{"lenght", 1}}}}).find("device.lenght") != std::string::npos);
  CHECK(config_error({{"bogus", 1}}).find("bogus") != std::string::npos);
  CHECK(config_error({{"pump", {{"tau_s", "short"}}}}).find("pump.tau_s") != std::string::npos);
  CHECK(config_error({{"pump", {{"regime", "laser"}}}}).find("pump.regime") != std::string::npos);
  CHECK(config_error({{"grid", {{"points", 8}}}}).find("grid.points") != std::string::npos);
  CHECK(config_error({{"sweep", {{"gammas", json::array()}}}}).find("sweep.gammas") != std::string::npos);
  CHECK(config_error({{"sweep", {{"phi_count", -3}}}}).find("sweep.phi_count") != std::string::npos);
  CHECK(config_error({{"device", {{"L_m", -1.0}}}}).find("device.L_m") != std::string::npos);
  config_error({{"seed", {{"kind", "coherent_first_mode"}}}, {"filter", {{"half_width_rad_s", 1e12}}}});
  config_error({{"detection", {{"kind", "homodyne"}}}});
}

TEST_CASE("overrides") {
  json doc = json::object();
  apply_override(doc, "device.gap_m=0.02");
  apply_override(doc, "pump.regime=pulsed");
  apply_override(doc, "sweep.gammas=[0.5,1]");
  auto c = config_from_json(doc);
  CHECK(c.gap == 0.02);
  CHECK(c.regime == PumpRegime::Pulsed);
  CHECK(c.gammas == std::vector<double>{0.5, 1.0});
  CHECK_THROWS_AS(apply_override(doc, "novalue"), Error);
  CHECK_THROWS_AS(apply_override(doc, "a..b=1"), Error);
}

TEST_CASE("dispersion sources") {
  auto dir = std::filesystem::temp_directory_path() / "su11_config_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream(dir / "toy.json") << test::toy_json(1.7, 1.8).dump();
    std::ofstream(dir / "run.json") << json{{"dispersion", {{"file", "toy.json"}}}}.dump();
  }
  auto c = load_config(dir / "run.json");
  auto m = resolve_dispersion(c);
  CHECK(refractive_index(m, Polarization::Ordinary, test::omega_p()) == doctest::Approx(1.7));

  RunConfig inline_cfg;
  inline_cfg.dispersion = test::toy_json();
  CHECK(refractive_index(resolve_dispersion(inline_cfg), Polarization::Extraordinary, test::omega_p()) ==
        doctest::Approx(1.9));

  RunConfig missing;
  missing.dispersion = {{"file", (dir / "nope.json").string()}};
  CHECK_THROWS_AS(resolve_dispersion(missing), Error);
  RunConfig wrong;
  wrong.dispersion = "ktp";
  CHECK_THROWS_AS(resolve_dispersion(wrong), Error);
  CHECK_THROWS_AS(load_config(dir / "absent.json"), Error);
  std::filesystem::remove_all(dir);
}
