#pragma once

// Minimal SVG emission for orbit plots: a polyline with point markers plus an
// optional implicit-curve point cloud. Presentation only.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "miquel/geometry.hpp"

namespace svgplot {

struct Bounds {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  void include(miquel::Point p) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
};

inline std::string render(const std::vector<miquel::Point>& path,
                          const std::vector<miquel::Point>& markers,
                          const std::vector<miquel::Point>& curve_cloud) {
  Bounds b;
  bool first = true;
  auto seed_bounds = [&](const std::vector<miquel::Point>& pts) {
    for (const auto& p : pts) {
      if (first) {
        b = Bounds{p.x, p.x, p.y, p.y};
        first = false;
      } else {
        b.include(p);
      }
    }
  };
  seed_bounds(path);
  seed_bounds(markers);
  seed_bounds(curve_cloud);
  const double w = std::max(b.xmax - b.xmin, 1e-9);
  const double h = std::max(b.ymax - b.ymin, 1e-9);
  const double pad = 0.06 * std::max(w, h);
  const double size = 720.0;
  const double sc = size / std::max(w + 2 * pad, h + 2 * pad);
  auto X = [&](double x) { return (x - b.xmin + pad) * sc; };
  auto Y = [&](double y) { return size - (y - b.ymin + pad) * sc; };  // y up

  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
                "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
                size, size, size, size);
  out += buf;
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (const auto& p : curve_cloud) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"1\" fill=\"#888\"/>\n",
                  X(p.x), Y(p.y));
    out += buf;
  }
  if (path.size() > 1) {
    out += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1\" points=\"";
    for (const auto& p : path) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(p.x), Y(p.y));
      out += buf;
    }
    out += "\"/>\n";
  }
  for (const auto& p : markers) {
    std::snprintf(buf, sizeof buf,
                  "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2.5\" fill=\"#d62728\"/>\n",
                  X(p.x), Y(p.y));
    out += buf;
  }
  out += "</svg>\n";
  return out;
}

// Points near the zero set of f, from sign changes on a grid covering the
// bounds of `around` (expanded), about `budget` samples in total.
inline std::vector<miquel::Point> implicit_cloud(
    const std::function<double(miquel::Point)>& f,
    const std::vector<miquel::Point>& around, int budget = 2048) {
  Bounds b;
  bool first = true;
  for (const auto& p : around) {
    if (first) {
      b = Bounds{p.x, p.x, p.y, p.y};
      first = false;
    } else {
      b.include(p);
    }
  }
  const double w = std::max(b.xmax - b.xmin, 1e-9), h = std::max(b.ymax - b.ymin, 1e-9);
  const double cx = (b.xmin + b.xmax) / 2, cy = (b.ymin + b.ymax) / 2;
  const double half = 0.9 * std::max(w, h);
  const int n = std::max(16, static_cast<int>(std::sqrt(budget)));
  std::vector<double> vals(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) {
    return miquel::Point{cx - half + 2 * half * i / (n - 1),
                         cy - half + 2 * half * j / (n - 1)};
  };
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) vals[j * n + i] = f(at(i, j));
  std::vector<miquel::Point> cloud;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i + 1 < n; ++i) {
      const double a = vals[j * n + i], c = vals[j * n + i + 1];
      if (a == 0 || a * c < 0) {
        const double t = a / (a - c);
        const miquel::Point p0 = at(i, j), p1 = at(i + 1, j);
        cloud.push_back(p0 + (p1 - p0) * t);
      }
    }
  for (int j = 0; j + 1 < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double a = vals[j * n + i], c = vals[(j + 1) * n + i];
      if (a * c < 0) {
        const double t = a / (a - c);
        const miquel::Point p0 = at(i, j), p1 = at(i, j + 1);
        cloud.push_back(p0 + (p1 - p0) * t);
      }
    }
  return cloud;
}

}  // namespace svgplot
