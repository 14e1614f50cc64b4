#include "miquel/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace miquel {

double normalize_angle(double a) {
  double r = std::fmod(a, kTau);
  if (r < 0) r += kTau;
  if (r >= kTau) r = 0.0;  // fmod can land exactly on the period
  return r;
}

double angle_dist(double a, double b, double period) {
  double d = std::fmod(std::abs(a - b), period);
  return std::min(d, period - d);
}

double dist_to_multiple(double a, double period) {
  double r = std::remainder(a, period);
  return std::abs(r);
}

double oriented_angle(Point a, Point b, Point c) {
  const Vec2 u = a - b;
  const Vec2 w = c - b;
  const double lu = u.norm(), lw = w.norm();
  if (lu <= kGeomTol * std::max({lu, lw, 1e-300}) || lu == 0.0 || lw == 0.0)
    throw DegenerateGeometry("oriented_angle: coincident points");
  return normalize_angle(std::atan2(u.cross(w), u.dot(w)));
}

Point circumcenter(Point p, Point q, Point r) {
  const Vec2 b = q - p;
  const Vec2 c = r - p;
  const double diam2 = std::max({b.norm2(), c.norm2(), (r - q).norm2()});
  const double d = 2.0 * b.cross(c);
  if (diam2 == 0.0 || std::abs(d) <= kGeomTol * 2.0 * diam2)
    throw DegenerateGeometry("circumcenter: collinear or coincident points");
  const double lb = b.norm2(), lc = c.norm2();
  const Vec2 off{(c.y * lb - b.y * lc) / d, (b.x * lc - c.x * lb) / d};
  return p + off;
}

Circle circumcircle(Point p, Point q, Point r) {
  const Point o = circumcenter(p, q, r);
  return Circle{o, ((dist(o, p) + dist(o, q) + dist(o, r)) / 3.0)};
}

Circle circle_through(std::span<const Point, 4> pts) {
  // Algebraic (Kasa) fit: minimize sum (|z|^2 - 2 c.z - rho)^2, linear in
  // (c, rho); exact for concyclic input and symmetric in the four corners.
  // Solved against the centroid for conditioning.
  Vec2 g{0, 0};
  for (const Point& p : pts) g += p;
  g = g / 4.0;

  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, s1 = 4;
  double bx = 0, by = 0, b1 = 0;
  for (const Point& p : pts) {
    const Vec2 z = p - g;
    const double w = z.norm2();
    sxx += 4 * z.x * z.x; sxy += 4 * z.x * z.y; syy += 4 * z.y * z.y;
    sx += 2 * z.x; sy += 2 * z.y;
    bx += 2 * z.x * w; by += 2 * z.y * w; b1 += w;
  }
  // Normal equations for (cx, cy, rho) in the centroid frame.
  const double A[3][3] = {{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, s1}};
  const double B[3] = {bx, by, b1};
  const double det = A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) -
                     A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
                     A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
  double diam2 = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) diam2 = std::max(diam2, (pts[i] - pts[j]).norm2());
  if (diam2 == 0.0 || std::abs(det) <= 1e-14 * diam2 * diam2 * diam2)
    throw DegenerateGeometry("circle_through: near-collinear corners");
  auto solve3 = [&](int col) {
    double M[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) M[i][j] = (j == col) ? B[i] : A[i][j];
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
           M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
  };
  const Vec2 c{solve3(0) / det, solve3(1) / det};
  const double rho = solve3(2) / det;
  const double r2 = rho + c.norm2();
  if (!(r2 > 0) || !std::isfinite(r2))
    throw DegenerateGeometry("circle_through: degenerate radius");
  return Circle{g + c, std::sqrt(r2)};
}

Point reflect_across(Point p, const Line& axis) {
  const Vec2 d = axis.b - axis.a;
  const double len = d.norm();
  const double scale = std::max({len, dist(p, axis.a), 1e-300});
  if (len <= kGeomTol * scale)
    throw DegenerateGeometry("reflect_across: degenerate axis");
  const Vec2 t = d / len;
  const Vec2 w = p - axis.a;
  const double along = w.dot(t);
  const double off = w.cross(t);  // signed distance, axis frame
  return axis.a + t * along + t.rot90() * off;
}

namespace {
void require_on_circle(const Circle& c, Point at, double tol, const char* who) {
  const double d = dist(at, c.center);
  if (std::abs(d - c.radius) > tol * c.radius)
    throw NotOnCircle(std::string(who) + ": point not on circle");
}
}  // namespace

double exterior_angle(const Circle& c1, const Circle& c2, Point at,
                      double membership_tol) {
  require_on_circle(c1, at, membership_tol, "exterior_angle");
  require_on_circle(c2, at, membership_tol, "exterior_angle");
  return oriented_angle(c1.center, at, c2.center);
}

Point other_intersection(const Circle& c1, const Circle& c2, Point known,
                         double membership_tol) {
  require_on_circle(c1, known, membership_tol, "other_intersection");
  require_on_circle(c2, known, membership_tol, "other_intersection");
  if (dist(c1.center, c2.center) <= kGeomTol * (c1.radius + c2.radius))
    throw DegenerateGeometry("other_intersection: coincident centers");
  return reflect_across(known, Line{c1.center, c2.center});
}

bool effective_miquel_check(double theta12, double theta23, double theta34,
                            double theta41, double tol) {
  return dist_to_multiple(theta12 + theta34 - theta23 - theta41, kTau) < tol;
}

double concyclicity_residual(Point p1, Point p2, Point p3, Point p4) {
  const Point pts[4] = {p1, p2, p3, p4};
  double diam = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) diam = std::max(diam, dist(pts[i], pts[j]));
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (dist(pts[i], pts[j]) <= kGeomTol * diam)
        throw DegenerateGeometry("concyclicity_residual: coincident points");

  double worst = 0;
  for (int hold = 0; hold < 4; ++hold) {
    Point tri[3];
    for (int i = 0, k = 0; i < 4; ++i)
      if (i != hold) tri[k++] = pts[i];
    const Point& q = pts[hold];
    try {
      const Point o = circumcenter(tri[0], tri[1], tri[2]);
      const double r = dist(o, tri[0]);
      worst = std::max(worst, std::abs(dist(o, q) - r) / r);
    } catch (const DegenerateGeometry&) {
      // Collinear triple: signed distance of the held-out point to the line,
      // over the point-set diameter.
      const Vec2 d = tri[2] - tri[0];
      worst = std::max(worst, std::abs((q - tri[0]).cross(d)) / (d.norm() * diam));
    }
  }
  return worst;
}

}  // namespace miquel
