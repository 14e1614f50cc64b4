#pragma once

// Shared generators and independent oracles for the test suites. Everything
// here is deliberately separate from the library implementation paths it is
// used to check.

#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "miquel/coords.hpp"
#include "miquel/dynamics.hpp"
#include "miquel/forge.hpp"
#include "miquel/geometry.hpp"
#include "miquel/pattern.hpp"
#include "miquel/twobytwo.hpp"

namespace testsup {

using namespace miquel;

inline std::mt19937 rng(unsigned seed) { return std::mt19937(seed); }

inline double uniform(std::mt19937& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Standard grid with iid uniform vertex noise; the usual forge seed.
inline TorusPattern noisy_grid(int m, int n, int s, double noise, unsigned seed) {
  auto g = rng(seed);
  std::vector<Point> verts;
  verts.reserve(static_cast<std::size_t>(m) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x)
      verts.push_back({x + uniform(g, -noise, noise), y + uniform(g, -noise, noise)});
  return TorusPattern(m, n, s, std::move(verts), Vec2(m, 0), Vec2(s, n));
}

inline TorusPattern forged(int m, int n, int s, double noise, unsigned seed,
                           double tol = 1e-12) {
  ForgeOptions opt;
  opt.tol = tol;
  return forge_pattern(noisy_grid(m, n, s, noise, seed), opt).pattern;
}

// Exact isoradial pattern from unit train-track directions: the vertex and
// center nodes form a rhombic embedding indexed by (p, q) = (x + y, y - x),
// with one unit vector per p-track (period gcd(m, n+s)) and q-track
// (period gcd(m, n-s)).
inline TorusPattern rhombic_pattern(int m, int n, int s, double jitter,
                                    unsigned seed) {
  const int gxi = std::gcd(m, n + s);
  const int geta = (n == s) ? m : std::gcd(m, std::abs(n - s));
  auto g = rng(seed);
  std::vector<std::complex<double>> xi(gxi), eta(geta);
  for (auto& z : xi) z = cis(M_PI / 4 + uniform(g, -jitter, jitter));
  for (auto& z : eta) z = cis(3 * M_PI / 4 + uniform(g, -jitter, jitter));

  auto track_sum = [](const std::vector<std::complex<double>>& dirs, int upto) {
    // sum_{k=0}^{upto-1} dirs[k mod g], with the empty/negative conventions
    std::complex<double> acc{0, 0};
    const int gp = static_cast<int>(dirs.size());
    auto at = [&](int k) { return dirs[((k % gp) + gp) % gp]; };
    if (upto >= 0)
      for (int k = 0; k < upto; ++k) acc += at(k);
    else
      for (int k = upto; k < 0; ++k) acc -= at(k);
    return acc;
  };
  auto node = [&](int p, int q) {
    return from_complex(track_sum(xi, p) + track_sum(eta, q));
  };
  auto vertex = [&](int x, int y) { return node(x + y, y - x); };

  std::vector<Point> verts;
  verts.reserve(static_cast<std::size_t>(m) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) verts.push_back(vertex(x, y));
  const Vec2 u = vertex(m, 0) - vertex(0, 0);
  const Vec2 v = vertex(s, n) - vertex(0, 0);
  return TorusPattern(m, n, s, std::move(verts), u, v);
}

// All faces rectangles: rows at heights -yI, yE, yI and columns at -xI, xE, xI.
inline TorusPattern all_rect_2x2(double xI, double yI, double xE, double yE) {
  std::vector<Point> verts = {{-xI, -yI}, {xE, -yI}, {-xI, yE}, {xE, yE}};
  return TorusPattern(2, 2, 0, std::move(verts), Vec2(2 * xI, 0), Vec2(0, 2 * yI));
}

// Rectangular regime with only the row angle flat: B = (xD + xE + xI, -yI)
// closes the trapezoid constraint.
inline TorusPattern rect_regime_2x2(double xI, double yI, double xD, double xE,
                                    double yE) {
  const double xB = xD + xE + xI;
  std::vector<Point> verts = {{-xI, -yI}, {xB, -yI}, {xD, yE}, {xE, yE}};
  return TorusPattern(2, 2, 0, std::move(verts), Vec2(2 * xI, 0), Vec2(0, 2 * yI));
}

// Similarity z -> a*z + b as a complex pair.
struct Similarity {
  std::complex<double> a{1, 0};
  std::complex<double> b{0, 0};
  Point operator()(Point p) const { return from_complex(a * to_complex(p) + b); }
};

inline Similarity random_similarity(std::mt19937& g) {
  const double rot = uniform(g, 0, kTau);
  const double sc = std::exp(uniform(g, -0.7, 0.7));
  return {sc * cis(rot), {uniform(g, -3, 3), uniform(g, -3, 3)}};
}

inline TorusPattern apply(const Similarity& s, const TorusPattern& p) {
  std::vector<Point> verts;
  verts.reserve(p.vertices().size());
  for (const Point& q : p.vertices()) verts.push_back(s(q));
  const Vec2 u = from_complex(s.a * to_complex(p.u()));
  const Vec2 v = from_complex(s.a * to_complex(p.v()));
  return TorusPattern(p.m(), p.n(), p.s(), std::move(verts), u, v);
}

// Max vertex displacement between two patterns, relative to the diameter.
inline double max_displacement(const TorusPattern& a, const TorusPattern& b) {
  double d = 0;
  for (int y = 0; y < a.n(); ++y)
    for (int x = 0; x < a.m(); ++x)
      d = std::max(d, dist(a.vertex(x, y), b.vertex(x, y)));
  return d / std::max(a.diameter(), 1e-300);
}

// Aligns b onto a by the similarity matching S(0,0) and S(1,0), then reports
// the worst vertex/monodromy displacement relative to the diameter.
inline double displacement_up_to_similarity(const TorusPattern& a,
                                            const TorusPattern& b) {
  const auto a0 = to_complex(a.vertex(0, 0)), a1 = to_complex(a.vertex(1, 0));
  const auto b0 = to_complex(b.vertex(0, 0)), b1 = to_complex(b.vertex(1, 0));
  const Similarity s{(a1 - a0) / (b1 - b0), a0 - (a1 - a0) / (b1 - b0) * b0};
  double d = 0;
  for (int y = 0; y < a.n(); ++y)
    for (int x = 0; x < a.m(); ++x)
      d = std::max(d, dist(a.vertex(x, y), s(b.vertex(x, y))));
  d = std::max(d, (a.u() - from_complex(s.a * to_complex(b.u()))).norm());
  d = std::max(d, (a.v() - from_complex(s.a * to_complex(b.v()))).norm());
  return d / std::max(a.diameter(), 1e-300);
}

// Independent circle-circle intersection oracle (quadratic solver, no
// reflections involved).
inline std::vector<Point> circle_intersections_oracle(const Circle& c1,
                                                      const Circle& c2) {
  const Vec2 d = c2.center - c1.center;
  const double L = d.norm();
  if (L == 0) return {};
  const double a = (c1.radius * c1.radius - c2.radius * c2.radius + L * L) / (2 * L);
  const double h2 = c1.radius * c1.radius - a * a;
  if (h2 < -1e-12 * c1.radius * c1.radius) return {};
  const double h = std::sqrt(std::max(h2, 0.0));
  const Vec2 t = d / L;
  const Point mid = c1.center + t * a;
  if (h == 0) return {mid};
  return {mid + t.rot90() * h, mid - t.rot90() * h};
}

// Least-squares general conic through >= 5 points (6 coefficients, unit-norm
// null vector via power iteration on the normal matrix inverse-free route):
// returns coefficients of q in the same centered frame convention as Conic.
struct FittedConic {
  std::array<double, 6> c;
  Point center;
  double scale;
  double eval(Point w) const {
    const double X = (w.x - center.x) / scale, Y = (w.y - center.y) / scale;
    return c[0] * X * X + c[1] * X * Y + c[2] * Y * Y + c[3] * X + c[4] * Y + c[5];
  }
};

FittedConic fit_conic_oracle(const std::vector<Point>& pts);

// Brute-force root scan for the angle-completion relations: find all
// (c0, d0) in (0, 2pi)^2 with c0 + d0 fixed by the half-angle sum and equal
// sine products.
std::vector<std::pair<double, double>> lemma52_bruteforce(
    const std::vector<double>& c, const std::vector<double>& d, int p);

// Second intersection of a conic with the line through `base` (on the conic)
// in direction `dir`; exact up to the quadratic's roundoff.
Point point_on_conic(const Conic& conic, Point base, Vec2 dir);

// A Miquel configuration: four circles, four A-points (concyclic by
// construction unless perturbed), four B-points, and the exterior angles.
struct MiquelConfig {
  std::array<Circle, 4> circles;
  std::array<Point, 4> a_points;
  std::array<Point, 4> b_points;
  std::array<double, 4> thetas;  // theta_12, theta_23, theta_34, theta_41
};

std::optional<MiquelConfig> make_miquel_config(std::mt19937& g, double perturb);

}  // namespace testsup
