#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "su11/io.hpp"
#include "su11/svg.hpp"
#include "support.hpp"

using namespace su11;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("doubles survive a text round trip") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 4.515305561119662e-05}) {
    CHECK(std::strtod(format_double(v).c_str(), nullptr) == v);
  }
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("sweep CSV and summary") {
  RunConfig cfg;
  cfg.phi_count = 33;
  cfg.filter_half_width = kDefaultFilterHalfWidth;
  auto res = run_phase_sweep(cfg, 1.0);
  auto dir = std::filesystem::temp_directory_path() / "su11_io_test";
  write_sweep_csv(dir / "s.csv", res);
  auto text = slurp(dir / "s.csv");
  CHECK(text.rfind("phi,N,varN,dNdphi,dphi,dphi_snl,normalized", 0) == 0);
  CHECK(text.find("N_filt") != std::string::npos);
  std::size_t lines = 0;
  for (char ch : text) lines += ch == '\n';
  CHECK(lines == 34);

  auto sum = sweep_summary(res);
  CHECK(sum.contains("metadata"));
  auto svg = sweep_svg(res, "t", true);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("JSA sidecar") {
  SweepEngine e(test::pulsed_config(32));
  auto j = e.build_jsa(1.0);
  auto side = jsa_sidecar(j);
  CHECK(side["layout"] == "dense");
  CHECK(side["signal_axis"]["points"] == 32);
  CHECK(side["normalized"] == true);
  CHECK(jsi_svg(j, "x").find("<svg") != std::string::npos);

  SweepEngine cw(RunConfig{});
  auto c = cw.build_jsa(1.0);
  CHECK(jsa_sidecar(c)["layout"] == "antidiagonal");
  CHECK(jsa_sidecar(c)["signal_axis"]["rule"] == "midpoint");
}

TEST_CASE("line plot breaks on non-finite points") {
  svg::Series s{"a", {0, 1, 2, 3}, {1, std::numeric_limits<double>::infinity(), 2, 3}};
  auto out = svg::line_plot({"t", "x", "y"}, {s});
  CHECK(out.find("<polyline") != std::string::npos);
  std::size_t n = 0;
  for (auto p = out.find("<polyline"); p != std::string::npos; p = out.find("<polyline", p + 1)) ++n;
  CHECK(n == 2);
}
