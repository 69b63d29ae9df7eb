#include "imc/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace imc::cli {

namespace {

constexpr double kWidth = 520.0;
constexpr double kHeight = 500.0;
constexpr std::array<const char*, 8> kPalette{"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                                              "#66a61e", "#e6ab02", "#a6761d", "#666666"};

struct Point {
  double x, y;
};

// Corners for states 0, 1, 2: bottom left, bottom right, top.
const std::array<Point, 3> kCorners{Point{60.0, 440.0}, Point{460.0, 440.0},
                                    Point{260.0, 440.0 - 400.0 * std::sqrt(3.0) / 2.0}};

Point project(const MassFunction& m) {
  Point p{0.0, 0.0};
  for (std::size_t i = 0; i < 3; ++i) {
    p.x += m[i] * kCorners[i].x;
    p.y += m[i] * kCorners[i].y;
  }
  return p;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string ternary_svg(const StateSpace& space, const std::vector<TrajectoryStep>& steps,
                        const Settings& settings) {
  if (space.size() != 3)
    throw ArgumentError("ternary plots need exactly 3 states, the model has " +
                        std::to_string(space.size()));
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "  <polygon points=\"";
  for (const auto& c : kCorners) svg << coord(c.x) << "," << coord(c.y) << " ";
  svg << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
  const std::array<Point, 3> label_at{Point{kCorners[0].x - 10, kCorners[0].y + 22},
                                      Point{kCorners[1].x + 10, kCorners[1].y + 22},
                                      Point{kCorners[2].x, kCorners[2].y - 12}};
  for (std::size_t i = 0; i < 3; ++i)
    svg << "  <text x=\"" << coord(label_at[i].x) << "\" y=\"" << coord(label_at[i].y)
        << "\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">"
        << escape(space.label(i)) << "</text>\n";

  for (std::size_t s = 0; s < steps.size(); ++s) {
    const auto& step = steps[s];
    std::vector<Halfspace> box;
    for (std::size_t x = 0; x < 3; ++x) {
      auto e = Gamble::indicator(space, x);
      box.push_back({e, step.singleton[x].upper});
      box.push_back({-e, -step.singleton[x].lower});
    }
    auto vertices = enumerate_vertices(space, box, settings);
    if (vertices.empty())
      throw ArgumentError("singleton bounds at step " + std::to_string(step.n) +
                          " do not meet the simplex");
    std::vector<Point> pts;
    for (const auto& v : vertices) pts.push_back(project(v));
    Point centre{0.0, 0.0};
    for (const auto& p : pts) {
      centre.x += p.x / static_cast<double>(pts.size());
      centre.y += p.y / static_cast<double>(pts.size());
    }
    std::sort(pts.begin(), pts.end(), [&](const Point& a, const Point& b) {
      return std::atan2(a.y - centre.y, a.x - centre.x) < std::atan2(b.y - centre.y, b.x - centre.x);
    });
    const char* colour = kPalette[s % kPalette.size()];
    svg << "  <g id=\"step-" << step.n << "\">\n";
    if (pts.size() == 1) {
      svg << "    <circle cx=\"" << coord(pts[0].x) << "\" cy=\"" << coord(pts[0].y)
          << "\" r=\"2.5\" fill=\"" << colour << "\"/>\n";
    } else {
      svg << "    <polygon points=\"";
      for (const auto& p : pts) svg << coord(p.x) << "," << coord(p.y) << " ";
      svg << "\" fill=\"" << colour << "\" fill-opacity=\"0.25\" stroke=\"" << colour
          << "\" stroke-width=\"1\"/>\n";
    }
    svg << "  </g>\n";
    const double ly = 24.0 + 18.0 * static_cast<double>(s);
    svg << "  <rect x=\"16\" y=\"" << coord(ly - 10) << "\" width=\"12\" height=\"12\" fill=\""
        << colour << "\" fill-opacity=\"0.5\"/>\n";
    svg << "  <text x=\"34\" y=\"" << coord(ly) << "\" font-family=\"sans-serif\" "
        << "font-size=\"12\">n = " << step.n << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace imc::cli
