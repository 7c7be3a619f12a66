#include <doctest.h>

#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "su11/cli.hpp"
#include "su11/error.hpp"

namespace fs = std::filesystem;
using su11::cli::parse_gammas;
using su11::cli::run;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(std::vector<std::string> args) {
  args.insert(args.begin(), "su11");
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const char* name) {
  auto d = fs::temp_directory_path() / name;
  fs::remove_all(d);
  return d;
}

std::size_t count_prefixed(const fs::path& dir, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir)) n += e.path().filename().string().rfind(prefix, 0) == 0;
  return n;
}

}  // namespace

TEST_CASE("gamma lists") {
  auto a = parse_gammas("0.04:10");
  REQUIRE(a.size() == 25);
  CHECK(a.front() == doctest::Approx(0.04));
  CHECK(a.back() == doctest::Approx(10.0));
  CHECK(a[1] / a[0] == doctest::Approx(a[2] / a[1]));
  auto b = parse_gammas("1:3:3");
  CHECK(b == std::vector<double>{1.0, 2.0, 3.0});
  auto c = parse_gammas("0.1,0.5,2");
  CHECK(c.size() == 3);
  CHECK(parse_gammas("1:100:3:log")[1] == doctest::Approx(10.0));
  CHECK_THROWS(parse_gammas("x"));
  CHECK_THROWS(parse_gammas("3:1"));
}

TEST_CASE("configuration errors exit with 2") {
  fs::path data = SU11_TEST_DATA_DIR;
  CHECK(call({"jsa", "--config", (data / "missing_dispersion.json").string()}).code == 2);
  CHECK(call({"jsa", "--config", "/nonexistent/run.json"}).code == 2);
  CHECK(call({"sweep", "--bogus"}).code == 2);
  CHECK(call({"sweep", "--set", "grid.points=8"}).code == 2);
  CHECK(call({"sweep", "--set", "pump.regime=laser"}).code == 2);
  auto r = call({"sweep", "--filter", "wide"});
  CHECK(r.code == 2);
  CHECK(r.err.find("--filter") != std::string::npos);
  CHECK(call({}).code == 2);
}

TEST_CASE("a failing validation exits with 1") {
  auto dir = scratch("su11_cli_validate");
  auto r = call({"validate", "--only", "9", "-o", dir.string(), "--set", "device.poling_period_m=4.7410708e-5"});
  CHECK(r.code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("outputs are named by the configuration hash") {
  auto dir = scratch("su11_cli_outputs");
  REQUIRE(call({"jsa", "--phi", "1.0", "-o", dir.string(), "--set", "pump.regime=pulsed", "--set", "grid.points=32"}).code == 0);
  REQUIRE(call({"schmidt", "--phi", "2.0", "-o", dir.string(), "--set", "pump.regime=pulsed", "--set", "grid.points=32"}).code == 0);
  REQUIRE(call({"sweep", "--gamma", "1.3", "-o", dir.string(), "--set", "sweep.phi_count=33"}).code == 0);
  CHECK(count_prefixed(dir, "jsa-") == 3);
  CHECK(count_prefixed(dir, "schmidt-") == 4);
  CHECK(count_prefixed(dir, "sweep-") == 3);
  CHECK(count_prefixed(dir, "config-") == 2);

  // same configuration, same names
  auto before = count_prefixed(dir, "");
  REQUIRE(call({"sweep", "--gamma", "1.3", "-o", dir.string(), "--set", "sweep.phi_count=33"}).code == 0);
  CHECK(count_prefixed(dir, "") == before);
  fs::remove_all(dir);
}
