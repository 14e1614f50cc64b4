#include "miquel/twobytwo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace miquel {

namespace {
void require_2x2(const TorusPattern& p, const char* who) {
  if (p.m() != 2 || p.n() != 2 || p.s() != 0)
    throw InvalidParameters(std::string(who) + ": requires (m, n, s) = (2, 2, 0)");
}

double mod_pi(double a) {
  double r = std::fmod(a, M_PI);
  if (r < 0) r += M_PI;
  return r;
}

double dist_mod_pi(double a, double b) {
  const double d = std::abs(mod_pi(a) - mod_pi(b));
  return std::min(d, M_PI - d);
}
}  // namespace

TwoByTwoLabels labels_2x2(const TorusPattern& p) {
  require_2x2(p, "labels_2x2");
  TwoByTwoLabels L;
  L.A = p.unfold(0, 0);
  L.B = p.unfold(1, 0);
  L.C = p.unfold(2, 0);
  L.D = p.unfold(0, 1);
  L.E = p.unfold(1, 1);
  L.F = p.unfold(2, 1);
  L.G = p.unfold(0, 2);
  L.H = p.unfold(1, 2);
  L.I = p.unfold(2, 2);
  int k = 0;
  for (int fy = 0; fy < 2; ++fy)
    for (int fx = 0; fx < 2; ++fx) {
      const auto c = p.face_corners(fx, fy);
      L.omega[k++] = circle_through(std::span<const Point, 4>(c)).center;
    }
  return L;
}

Conic::Conic(std::array<double, 6> coeffs, Point center, double scale)
    : c_(coeffs), center_(center), scale_(scale) {
  double mx = 0;
  for (double v : c_) mx = std::max(mx, std::abs(v));
  if (!(mx > 0) || !(scale_ > 0))
    throw DegenerateConfiguration("Conic: zero coefficients or scale");
  for (double& v : c_) v /= mx;
}

double Conic::eval(Point world) const {
  const double X = (world.x - center_.x) / scale_;
  const double Y = (world.y - center_.y) / scale_;
  return c_[0] * X * X + c_[1] * X * Y + c_[2] * Y * Y + c_[3] * X + c_[4] * Y + c_[5];
}

Conic equilateral_hyperbola(Point B, Point D, Point F, Point H) {
  const Point pts[4] = {B, D, F, H};
  Vec2 g{0, 0};
  for (const Point& p : pts) g += p;
  g = g / 4.0;
  double scale = 0;
  for (const Point& p : pts) scale = std::max(scale, dist(p, g));
  if (scale <= 0)
    throw DegenerateConfiguration("equilateral_hyperbola: coincident points");

  // Trace-free conics are spanned by {X^2 - Y^2, XY, X, Y, 1}; four point
  // conditions pick a one-dimensional null space generically.
  Eigen::Matrix<double, 4, 5> M;
  for (int i = 0; i < 4; ++i) {
    const double X = (pts[i].x - g.x) / scale;
    const double Y = (pts[i].y - g.y) / scale;
    M(i, 0) = X * X - Y * Y;
    M(i, 1) = X * Y;
    M(i, 2) = X;
    M(i, 3) = Y;
    M(i, 4) = 1.0;
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 5>> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  // Rank must be 4 for uniqueness. Orthocentric quadruples (a whole pencil of
  // equilateral hyperbolas passes through them) and collinear triples drop it.
  if (sv(3) < 1e-10 * sv(0))
    throw DegenerateConfiguration(
        "equilateral_hyperbola: no unique trace-free conic through the four points");
  const Eigen::Matrix<double, 5, 1> null = svd.matrixV().col(4);
  return Conic({null(0), null(1), -null(0), null(2), null(3), null(4)}, g, scale);
}

TorusPattern build_2x2(Point B, Point D, Point F, Point H, Point E,
                       const Build2x2Options& opt) {
  const Conic hyp = equilateral_hyperbola(B, D, F, H);
  const double resid = std::abs(hyp.eval(E));
  if (resid > opt.hyperbola_tol) {
    std::ostringstream os;
    os << "build_2x2: E off the equilateral hyperbola (residual " << resid << ")";
    throw NotOnHyperbola(os.str());
  }
  const Vec2 u = F - D;
  const Vec2 v = H - B;
  Point A;
  try {
    const Circle c1 = circumcircle(B, D, E);
    const Circle c2 = circumcircle(D, E, H);
    const Circle c2_shift{c2.center - v, c2.radius};
    A = other_intersection(c1, c2_shift, B);
  } catch (const Error& e) {
    throw DegenerateConfiguration(std::string("build_2x2: ") + e.what());
  }
  TorusPattern p(2, 2, 0, {A, B, D, E}, u, v);
  const ValidationReport rep = validate(p, opt.validation);
  if (!rep.pass)
    throw DegenerateConfiguration("build_2x2: invalid pattern: " + rep.summary());
  return p;
}

AngleInvariants angle_invariants(const TorusPattern& p, double tol) {
  require_2x2(p, "angle_invariants");
  const TwoByTwoLabels L = labels_2x2(p);
  const double cba = oriented_angle(L.C, L.B, L.A);
  const double def = oriented_angle(L.D, L.E, L.F);
  const double adg = oriented_angle(L.A, L.D, L.G);
  const double heb = oriented_angle(L.H, L.E, L.B);
  // The two equalities hold mod 2*pi except at a flat angle, where the value
  // 0-vs-pi depends on which side of the chord the point sits; there only the
  // mod-pi content is invariant.
  auto consistent = [&](double a, double b) {
    if (dist_mod_pi(a, 0.0) < 1e-7) return angle_dist(a, b, M_PI) <= tol;
    return angle_dist(a, b) <= tol;
  };
  if (!consistent(cba, def))
    throw InconsistentPattern("angle_invariants: angle(C,B,A) != angle(D,E,F)");
  if (!consistent(adg, heb))
    throw InconsistentPattern("angle_invariants: angle(A,D,G) != angle(H,E,B)");
  return {mod_pi(cba), mod_pi(adg)};
}

Regime classify_2x2(const TorusPattern& p, double tol) {
  const AngleInvariants ai = angle_invariants(p);
  const TwoByTwoLabels L = labels_2x2(p);
  const bool flat = dist_mod_pi(ai.alpha, 0.0) < tol || dist_mod_pi(ai.beta, 0.0) < tol;
  // A parallelogram is a rectangle iff its diagonals have equal length.
  const double diag_gap =
      std::abs(dist(L.A, L.I) - dist(L.C, L.G)) / std::max(dist(L.A, L.I), dist(L.C, L.G));
  const bool rect = diag_gap < tol;
  if (flat != rect) {
    std::ostringstream os;
    os << "classify_2x2: angle test (" << (flat ? "flat" : "generic")
       << ") disagrees with rectangle test (diagonal gap " << diag_gap << ")";
    throw InconsistentPattern(os.str());
  }
  return flat ? Regime::rectangular : Regime::generic;
}

namespace {
// Center of the circle on which the chord from `from` to `to` subtends the
// oriented inscribed angle a: it sits on the perpendicular bisector at signed
// offset |chord| * cot(a) / 2.
Point inscribed_angle_center(Point from, Point to, double a) {
  const double s = std::sin(a);
  if (std::abs(s) < 1e-12)
    throw WrongRegime("inscribed_angle_center: flat angle");
  const auto offset =
      std::complex<double>(0, -0.5) * (std::cos(a) / s) * to_complex(from - to);
  return (from + to) / 2.0 + from_complex(offset);
}

Point line_intersection(Point p0, Vec2 d0, Point p1, Vec2 d1) {
  const double det = d0.cross(d1);
  if (std::abs(det) < 1e-14 * d0.norm() * d1.norm())
    throw DegenerateConfiguration("line_intersection: parallel lines");
  const Vec2 w = p1 - p0;
  return p0 + d0 * (w.cross(d1) / det);
}
}  // namespace

QuarticModel generic_quartic(Point A, Point C, Point G, Point I,
                             double alpha, double beta) {
  const double scale = std::max({dist(A, C), dist(A, G), dist(A, I), dist(C, G)});
  if (dist_mod_pi(alpha, 0.0) < 1e-12 || dist_mod_pi(beta, 0.0) < 1e-12)
    throw WrongRegime("generic_quartic: flat angle invariant (rectangular regime)");
  const Point O = (A + I) / 2.0;
  if (std::abs(dist(O, A) - dist(O, C)) < 1e-12 * scale)
    throw WrongRegime("generic_quartic: ACIG is a rectangle");

  // C1: center of {angle(C, M, A) = alpha mod pi}; C2: center of
  // {angle(A, M, G) = beta mod pi}. The primed copies are translated by the
  // monodromies, and P is the intersection of the two center lines.
  const Point c1 = inscribed_angle_center(C, A, alpha);
  const Point c2 = inscribed_angle_center(A, G, beta);
  const Vec2 vdir = G - A;
  const Vec2 udir = C - A;
  const Point P = line_intersection(c1, vdir, c2, udir);
  const Point Pp = O * 2.0 - P;

  const double PA2 = (A - P).norm2(), PpA2 = (A - Pp).norm2();
  const double PC2 = (C - P).norm2(), PpC2 = (C - Pp).norm2();
  const double OA2 = (A - O).norm2(), OC2 = (C - O).norm2();
  const double denom = OA2 - OC2;
  GenericQuartic q;
  q.P = P;
  q.Pp = Pp;
  q.O = O;
  q.lambda = (PA2 * PpA2 - PC2 * PpC2) / denom;
  q.k = (OA2 * PC2 * PpC2 - OC2 * PA2 * PpA2) / denom;
  q.scale = scale;
  return QuarticModel{q};
}

QuarticModel rectangular_quartic(const TorusPattern& p, double tol) {
  require_2x2(p, "rectangular_quartic");
  if (classify_2x2(p, tol) != Regime::rectangular)
    throw WrongRegime("rectangular_quartic: pattern is in the generic regime");
  const AngleInvariants ai = angle_invariants(p);
  TwoByTwoLabels L = labels_2x2(p);

  // Work with the flat row horizontal. If only beta is flat, conjugate by the
  // quarter-turn relabeling that transposes the two directions.
  const bool alpha_flat = dist_mod_pi(ai.alpha, 0.0) < tol;
  Point A = L.A, C = L.C, G = L.G, I = L.I, D = L.D, E = L.E;
  if (!alpha_flat) {
    std::swap(C, G);
    D = L.B;
  }

  RectangularQuartic q;
  q.origin = (A + I) / 2.0;
  const Vec2 exv = C - A;
  q.ex = exv / exv.norm();
  q.ey = q.ex.rot90();
  q.scale = std::max(dist(A, I), dist(C, G));
  auto frame = [&](Point w) {
    const Vec2 r = w - q.origin;
    return Point{r.dot(q.ex), r.dot(q.ey)};
  };
  const Point fI = frame(I), fD = frame(D), fE = frame(E);
  const double xI = fI.x, yI = fI.y, xD = fD.x, xE = fE.x, yE = fE.y;
  const double den = yI * yI - yE * yE;
  if (std::abs(den) < 1e-12 * q.scale * q.scale)
    throw DegenerateConfiguration("rectangular_quartic: y_I^2 = y_E^2 pole");

  const double t1 = (xD + xI) * (xD + xI);
  const double t2 = xI * xI + yI * yI - xE * xE - yE * yE;
  const double base = xI * xI + yI * yI + xE * xE + yE * yE;
  q.a = base + t1 * t2 / den;
  q.b = base + t1 * (xE * xE - xI * xI) * t2 / (den * den);
  q.c = (xI * xI + yI * yI) * (xE * xE + yE * yE) +
        t1 * (xE * xE * yI * yI - xI * xI * yE * yE) * t2 / (den * den);
  return QuarticModel{q};
}

double quartic_residual(const QuarticModel& q, Point M) {
  if (q.generic()) {
    const auto& g = std::get<GenericQuartic>(q.curve);
    const double val = (M - g.P).norm2() * (M - g.Pp).norm2() -
                       g.lambda * (M - g.O).norm2() - g.k;
    const double s2 = g.scale * g.scale;
    return val / (s2 * s2);
  }
  const auto& r = std::get<RectangularQuartic>(q.curve);
  const Vec2 w = M - r.origin;
  const double X = w.dot(r.ex), Y = w.dot(r.ey);
  const double val = (X * X + Y * Y) * (X * X + Y * Y) - r.a * X * X - r.b * Y * Y + r.c;
  const double s2 = r.scale * r.scale;
  return val / (s2 * s2);
}

RotationReport rotation_law_check(const TorusPattern& p, int steps, double regime_tol) {
  require_2x2(p, "rotation_law_check");
  if (steps < 1) throw InvalidParameters("rotation_law_check: steps must be positive");
  const AngleInvariants ai = angle_invariants(p);
  if (dist_mod_pi(ai.alpha, 0.0) > regime_tol || dist_mod_pi(ai.beta, 0.0) > regime_tol)
    throw WrongRegime("rotation_law_check: requires the all-rectangles regime");

  const TwoByTwoLabels L = labels_2x2(p);
  const Point O = (L.A + L.I) / 2.0;
  const Vec2 exv = L.C - L.A;
  const Vec2 ex = exv / exv.norm();
  const Vec2 ey = ex.rot90();
  const double xI = (L.I - O).dot(ex), yI = (L.I - O).dot(ey);
  const double r2 = xI * xI + yI * yI;
  RotationReport rep;
  rep.steps = steps;
  rep.delta = std::atan2(2 * xI * yI / r2, (xI * xI - yI * yI) / r2);
  const double scale = std::sqrt(r2);

  const Orbit orbit = evolve(p, 0, steps);
  const NormalizedOrbit no = normalize(orbit);
  auto frameE = [&](int t) {
    const Vec2 w = no.at(t).vertex(1, 1) - O;
    return std::complex<double>(w.dot(ex), w.dot(ey));
  };

  // Each step reflects across the horizontal axis after rotating by +delta
  // (black step) or -delta (white step); double steps rotate by +-2*delta.
  std::complex<double> prev = frameE(0);
  for (int t = 0; t < steps; ++t) {
    const std::complex<double> cur = frameE(t + 1);
    const double ang = (t % 2 == 0) ? rep.delta : -rep.delta;
    const std::complex<double> pred = std::conj(prev * cis(ang));
    rep.max_step_dev = std::max(rep.max_step_dev, std::abs(cur - pred) / scale);
    if (t + 2 <= steps) {
      const std::complex<double> cur2 = frameE(t + 2);
      const double dang = (t % 2 == 0) ? 2 * rep.delta : -2 * rep.delta;
      rep.max_double_dev =
          std::max(rep.max_double_dev, std::abs(cur2 - prev * cis(dang)) / scale);
    }
    prev = cur;
  }
  return rep;
}

}  // namespace miquel
