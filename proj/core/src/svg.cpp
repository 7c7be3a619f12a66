#include "su11/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace su11::svg {

namespace {

constexpr double kW = 720, kH = 480, kL = 80, kR = 24, kT = 40, kB = 60;

std::string num(double v, int prec = 4) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '<': o += "&lt;"; break;
      case '>': o += "&gt;"; break;
      case '&': o += "&amp;"; break;
      default: o += c;
    }
  }
  return o;
}

struct Scale {
  double lo, hi;
  bool log;
  double a, b;  // pixel range
  double operator()(double v) const {
    double t = log ? (std::log10(v) - std::log10(lo)) / (std::log10(hi) - std::log10(lo)) : (v - lo) / (hi - lo);
    return a + t * (b - a);
  }
  std::vector<double> ticks() const {
    std::vector<double> t;
    if (log) {
      for (double d = std::floor(std::log10(lo)); d <= std::ceil(std::log10(hi)); d += 1.0) {
        double v = std::pow(10.0, d);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) t.push_back(v);
      }
      if (t.size() < 2) t = {lo, hi};
      return t;
    }
    double span = hi - lo;
    double step = std::pow(10.0, std::floor(std::log10(span / 5)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (span / (step * m) <= 7) {
        step *= m;
        break;
      }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) t.push_back(std::abs(v) < 1e-12 * span ? 0.0 : v);
    return t;
  }
};

void frame(std::ostringstream& os, const Axes& ax, const Scale& sx, const Scale& sy) {
  os << "<rect x='" << kL << "' y='" << kT << "' width='" << kW - kL - kR << "' height='" << kH - kT - kB
     << "' fill='none' stroke='#333'/>\n";
  for (double t : sx.ticks()) {
    double px = sx(t);
    os << "<line x1='" << px << "' y1='" << kH - kB << "' x2='" << px << "' y2='" << kH - kB + 5 << "' stroke='#333'/>"
       << "<text x='" << px << "' y='" << kH - kB + 20 << "' font-size='12' text-anchor='middle'>" << num(t, 3) << "</text>\n";
  }
  for (double t : sy.ticks()) {
    double py = sy(t);
    os << "<line x1='" << kL - 5 << "' y1='" << py << "' x2='" << kL << "' y2='" << py << "' stroke='#333'/>"
       << "<text x='" << kL - 8 << "' y='" << py + 4 << "' font-size='12' text-anchor='end'>" << num(t, 3) << "</text>\n";
  }
  os << "<text x='" << 0.5 * (kL + kW - kR) << "' y='" << kT - 14 << "' font-size='15' text-anchor='middle'>"
     << escape(ax.title) << "</text>\n";
  os << "<text x='" << 0.5 * (kL + kW - kR) << "' y='" << kH - 16 << "' font-size='13' text-anchor='middle'>"
     << escape(ax.xlabel) << "</text>\n";
  os << "<text transform='translate(18," << 0.5 * (kT + kH - kB) << ") rotate(-90)' font-size='13' text-anchor='middle'>"
     << escape(ax.ylabel) << "</text>\n";
}

}  // namespace

std::string line_plot(const Axes& ax, const std::vector<Series>& series) {
  double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
  auto ok = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!ax.logx || x > 0) && (!ax.logy || y > 0);
  };
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i)
      if (ok(s.x[i], s.y[i])) {
        xlo = std::min(xlo, s.x[i]);
        xhi = std::max(xhi, s.x[i]);
        ylo = std::min(ylo, s.y[i]);
        yhi = std::max(yhi, s.y[i]);
      }
  if (ax.yrange) std::tie(ylo, yhi) = *ax.yrange;
  if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
  if (xhi <= xlo) xhi = xlo + 1;
  if (yhi <= ylo) yhi = ylo + (ylo == 0 ? 1 : std::abs(ylo));
  Scale sx{xlo, xhi, ax.logx, kL, kW - kR}, sy{ylo, yhi, ax.logy, kH - kB, kT};

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH << "' font-family='sans-serif'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  frame(os, ax, sx, sy);
  os << "<clipPath id='plot'><rect x='" << kL << "' y='" << kT << "' width='" << kW - kL - kR << "' height='"
     << kH - kT - kB << "'/></clipPath>\n<g clip-path='url(#plot)'>\n";
  if (ax.hline && (!ax.logy || *ax.hline > 0))
    os << "<line x1='" << kL << "' x2='" << kW - kR << "' y1='" << sy(*ax.hline) << "' y2='" << sy(*ax.hline)
       << "' stroke='black' stroke-width='1.5'/>\n";
  for (const auto& s : series) {
    std::string dash = s.dashed ? " stroke-dasharray='6,4'" : "";
    std::ostringstream pts;
    auto flush = [&] {
      if (!pts.str().empty())
        os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.6'" << dash << " points='" << pts.str()
           << "'/>\n";
      pts.str("");
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!ok(s.x[i], s.y[i])) {
        flush();
        continue;
      }
      pts << num(sx(s.x[i]), 6) << ',' << num(sy(s.y[i]), 6) << ' ';
      if (s.markers) os << "<circle cx='" << sx(s.x[i]) << "' cy='" << sy(s.y[i]) << "' r='3' fill='" << s.color << "'/>\n";
    }
    flush();
  }
  os << "</g>\n";
  double ly = kT + 16;
  for (const auto& s : series) {
    if (s.label.empty()) continue;
    os << "<line x1='" << kW - kR - 190 << "' x2='" << kW - kR - 165 << "' y1='" << ly - 4 << "' y2='" << ly - 4
       << "' stroke='" << s.color << "' stroke-width='2'" << (s.dashed ? " stroke-dasharray='6,4'" : "") << "/>"
       << "<text x='" << kW - kR - 158 << "' y='" << ly << "' font-size='12'>" << escape(s.label) << "</text>\n";
    ly += 16;
  }
  os << "</svg>\n";
  return os.str();
}

std::string heat_map(const std::vector<double>& x, const std::vector<double>& y, const Eigen::MatrixXd& z,
                     const Axes& ax, std::size_t max_cells) {
  const std::size_t nx = x.size(), ny = y.size();
  const std::size_t bx = std::max<std::size_t>(1, (nx + max_cells - 1) / max_cells);
  const std::size_t by = std::max<std::size_t>(1, (ny + max_cells - 1) / max_cells);
  const std::size_t cx = (nx + bx - 1) / bx, cy = (ny + by - 1) / by;
  Eigen::MatrixXd cells = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(cy), static_cast<Eigen::Index>(cx));
  for (std::size_t r = 0; r < ny; ++r)
    for (std::size_t c = 0; c < nx; ++c)
      cells(static_cast<Eigen::Index>(r / by), static_cast<Eigen::Index>(c / bx)) += z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  double zmax = cells.maxCoeff();
  if (!(zmax > 0)) zmax = 1;

  Scale sx{x.front(), x.back(), false, kL, kW - kR}, sy{y.front(), y.back(), false, kH - kB, kT};
  double cw = (kW - kL - kR) / static_cast<double>(cx), ch = (kH - kT - kB) / static_cast<double>(cy);
  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << kW << "' height='" << kH << "' font-family='sans-serif'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n<g shape-rendering='crispEdges'>\n";
  for (std::size_t r = 0; r < cy; ++r)
    for (std::size_t c = 0; c < cx; ++c) {
      double t = cells(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) / zmax;
      if (t < 1e-4) continue;
      int R = static_cast<int>(255 * (1 - t)), G = static_cast<int>(255 * (1 - 0.7 * t)), B = 255 - static_cast<int>(60 * t);
      char col[8];
      std::snprintf(col, sizeof col, "#%02x%02x%02x", R, G, B);
      os << "<rect x='" << num(kL + c * cw, 6) << "' y='" << num(kH - kB - (r + 1) * ch, 6) << "' width='"
         << num(cw + 0.05, 5) << "' height='" << num(ch + 0.05, 5) << "' fill='" << col << "'/>\n";
    }
  os << "</g>\n";
  frame(os, ax, sx, sy);
  os << "</svg>\n";
  return os.str();
}

}  // namespace su11::svg
