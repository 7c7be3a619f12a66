#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace su11::svg {

struct Series {
  std::string label;
  std::vector<double> x, y;
  std::string color = "#1f77b4";
  bool dashed = false;
  bool markers = false;
};

struct Axes {
  std::string title, xlabel, ylabel;
  bool logx = false, logy = false;
  std::optional<std::pair<double, double>> yrange;
  std::optional<double> hline;  // horizontal reference line
};

// Non-finite points break the polyline.
std::string line_plot(const Axes& axes, const std::vector<Series>& series);

// Cell-centred heat map of z(row = y index, col = x index) with a grey-to-blue ramp.
std::string heat_map(const std::vector<double>& x, const std::vector<double>& y, const Eigen::MatrixXd& z,
                     const Axes& axes, std::size_t max_cells = 160);

}  // namespace su11::svg
