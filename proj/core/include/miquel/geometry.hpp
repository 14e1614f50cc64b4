#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <span>

#include "miquel/errors.hpp"

namespace miquel {

inline constexpr double kTau = 6.283185307179586476925286766559;

// Relative tolerance used by geometric predicates, scaled by the local
// feature size (circumradius, point-set diameter, ...).
inline constexpr double kGeomTol = 1e-9;
// Angles closer than this to 0 or 2*pi are treated as degenerate.
inline constexpr double kAngTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double k) const { return {k * x, k * y}; }
  constexpr Vec2 operator/(double k) const { return {x / k, y / k}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  constexpr double dot(Vec2 o) const { return x * o.x + y * o.y; }
  constexpr double cross(Vec2 o) const { return x * o.y - y * o.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::hypot(x, y); }
  // Counterclockwise quarter turn.
  constexpr Vec2 rot90() const { return {-y, x}; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

using Point = Vec2;

inline constexpr Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline double dist(Point a, Point b) { return (a - b).norm(); }

inline std::complex<double> to_complex(Point p) { return {p.x, p.y}; }
inline Point from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }
inline std::complex<double> cis(double a) { return {std::cos(a), std::sin(a)}; }

struct Line {
  Point a;
  Point b;
};

struct Circle {
  Point center;
  double radius = 0.0;
};

// Reduce an angle to [0, 2*pi).
double normalize_angle(double a);

// Distance between two angles modulo `period`.
double angle_dist(double a, double b, double period = kTau);

// Distance from `a` to the nearest integer multiple of `period`.
double dist_to_multiple(double a, double period);

// Counterclockwise angle at b from the ray b->a to the ray b->c, in [0, 2*pi).
// Satisfies oriented_angle(c, b, a) == 2*pi - oriented_angle(a, b, c) mod 2*pi.
double oriented_angle(Point a, Point b, Point c);

// Center of the circle through three non-collinear points.
Point circumcenter(Point p, Point q, Point r);
Circle circumcircle(Point p, Point q, Point r);

// Best-fit circle through four nearly concyclic points (algebraic fit,
// exact when the points are concyclic).
Circle circle_through(std::span<const Point, 4> pts);

// Mirror image of p across the given axis. Involution; fixes points on the axis.
Point reflect_across(Point p, const Line& axis);

// Exterior intersection angle between two circles at a common point:
// the oriented angle from the direction at->center1 to at->center2.
double exterior_angle(const Circle& c1, const Circle& c2, Point at,
                      double membership_tol = 1e-6);

// Second intersection point of two circles through `known`; equals `known`
// itself when the circles are tangent there.
Point other_intersection(const Circle& c1, const Circle& c2, Point known,
                         double membership_tol = 1e-6);

// True iff theta12 + theta34 == theta23 + theta41 modulo 2*pi within `tol`,
// which by Miquel's theorem characterises concyclicity of the four
// second intersection points.
bool effective_miquel_check(double theta12, double theta23, double theta34,
                            double theta41, double tol = kAngTol);

// Scale-invariant concyclicity measure for four pairwise distinct points:
// worst distance of a held-out point to the circumcircle of the other three,
// divided by that circumradius. Zero iff the points are concyclic. Collinear
// triples fall back to the held-out point's distance to the line over the
// point-set diameter.
double concyclicity_residual(Point p1, Point p2, Point p3, Point p4);

}  // namespace miquel
