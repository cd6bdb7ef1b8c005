#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "trigrid/instances.hpp"

namespace trigrid {

namespace {

constexpr double kScale = 24.0;
constexpr double kMargin = 12.0;

const char* stroke_for(const std::string& kind) {
  if (kind == "sp") return "#1f4fd1";
  if (kind == "svp") return "#1e9e3a";
  if (kind == "sgp") return "#d12a1f";
  if (kind == "x") return "#f08c00";
  if (kind == "pi") return "#8a2be2";
  return "#777777";
}

// light yellow for cheap cells through dark brown for expensive ones
std::string fill_for(double w, double lo, double hi) {
  double t = hi > lo ? (std::log(w) - std::log(lo)) / (std::log(hi) - std::log(lo)) : 0.5;
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 - 155 * t));
  const int g = static_cast<int>(std::lround(240 - 190 * t));
  const int b = static_cast<int>(std::lround(170 - 150 * t));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string export_svg(const Instance& inst, const std::vector<SvgPath>& paths) {
  const Tessellation& tess = inst.tessellation();
  const double width = (tess.cols() + 1) * kScale + 2 * kMargin;
  const double height = tess.rows() * kSqrt3 * kScale + 2 * kMargin;
  auto px = [&](Point2 p) {
    return std::pair<double, double>{kMargin + p.x * kScale, height - kMargin - p.y * kScale};
  };

  double lo = kInf;
  double hi = 0.0;
  for (const Cell& c : tess.cells()) {
    const double w = inst.weights.value(c);
    if (std::isinf(w)) continue;
    lo = std::min(lo, w);
    hi = std::max(hi, w);
  }

  std::ostringstream out;
  out.precision(6);
  out << std::fixed;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<g id=\"cells\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  for (const Cell& c : tess.cells()) {
    const double w = inst.weights.value(c);
    out << "<polygon points=\"";
    for (const Corner& v : tess.cell_vertices(c)) {
      const auto [x, y] = px(corner_position(v));
      out << x << ',' << y << ' ';
    }
    out << "\" fill=\"" << (std::isinf(w) ? std::string("none") : fill_for(w, lo, hi)) << "\"/>\n";
  }
  out << "</g>\n";
  for (const SvgPath& path : paths) {
    if (path.polyline.empty()) continue;
    out << "<polyline class=\"" << path.kind << "\" fill=\"none\" stroke=\"" << stroke_for(path.kind)
        << "\" stroke-width=\"2\" points=\"";
    for (const Point2& p : path.polyline) {
      const auto [x, y] = px(p);
      out << x << ',' << y << ' ';
    }
    out << "\"/>\n";
  }
  for (const Corner& c : {inst.source, inst.target}) {
    const auto [x, y] = px(corner_position(c));
    out << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"black\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace trigrid
