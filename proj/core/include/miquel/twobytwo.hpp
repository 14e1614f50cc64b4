#pragma once

#include <array>
#include <variant>
#include <vector>

#include "miquel/dynamics.hpp"
#include "miquel/pattern.hpp"

namespace miquel {

// Named vertices and centers of a 2x2 pattern: rows A B C / D E F / G H I
// bottom to top, with C = A + u, G = A + v, I = A + u + v.
struct TwoByTwoLabels {
  Point A, B, C, D, E, F, G, H, I;
  std::array<Point, 4> omega;  // circumcenters of faces (0,0), (1,0), (0,1), (1,1)
};

TwoByTwoLabels labels_2x2(const TorusPattern& p);

// General conic q_xx X^2 + q_xy XY + q_yy Y^2 + q_x X + q_y Y + q_0 evaluated
// in a centered, unit-scale frame so residuals are similarity-invariant.
// Coefficients are normalized to unit max-norm.
class Conic {
 public:
  Conic(std::array<double, 6> coeffs, Point center, double scale);

  // Dimensionless residual at a world point; 0 iff the point is on the conic.
  double eval(Point world) const;
  const std::array<double, 6>& coeffs() const { return c_; }
  Point frame_center() const { return center_; }
  double frame_scale() const { return scale_; }
  // q_xx + q_yy, zero for equilateral hyperbolas.
  double trace() const { return c_[0] + c_[2]; }

 private:
  std::array<double, 6> c_;
  Point center_;
  double scale_;
};

// Unique trace-free conic through four points in generic position. When the
// two diagonals (BH) and (DF) are perpendicular this degenerates to the line
// pair (BH) u (DF) automatically. Throws DegenerateConfiguration when the
// four-point system drops rank beyond that.
Conic equilateral_hyperbola(Point B, Point D, Point F, Point H);

struct Build2x2Options {
  double hyperbola_tol = 1e-7;  // gate on the conic residual of E
  ValidateOptions validation{};
};

// The five-point construction: circles through BDE / DEH, the second
// intersection A, and monodromies u = F - D, v = H - B. Throws NotOnHyperbola
// when E is off the equilateral hyperbola through B, D, F, H, and
// DegenerateConfiguration when an intersection fails or the result is not a
// valid pattern.
TorusPattern build_2x2(Point B, Point D, Point F, Point H, Point E,
                       const Build2x2Options& opt = {});

struct AngleInvariants {
  double alpha = 0.0;  // angle(C,B,A) mod pi, in [0, pi)
  double beta = 0.0;   // angle(A,D,G) mod pi, in [0, pi)
};

// Cross-checks angle(C,B,A) = angle(D,E,F) and angle(A,D,G) = angle(H,E,B)
// mod 2*pi before reducing; disagreement throws InconsistentPattern.
AngleInvariants angle_invariants(const TorusPattern& p, double tol = 1e-9);

enum class Regime { generic, rectangular };

// Rectangular iff alpha or beta is flat mod pi, verified to coincide with the
// fundamental parallelogram ACIG being a rectangle.
Regime classify_2x2(const TorusPattern& p, double tol = 1e-7);

struct GenericQuartic {
  Point P, Pp, O;
  double lambda = 0.0;
  double k = 0.0;
  double scale = 1.0;  // diameter of ACIG, for residual normalization
};

struct RectangularQuartic {
  double a = 0.0, b = 0.0, c = 0.0;
  Point origin;     // center of the rectangle
  Vec2 ex, ey;      // right-handed frame, ex along the flat row direction
  double scale = 1.0;
};

struct QuarticModel {
  std::variant<GenericQuartic, RectangularQuartic> curve;
  bool generic() const { return std::holds_alternative<GenericQuartic>(curve); }
};

// Trajectory curve PM^2 P'M^2 - lambda OM^2 = k of a non-rectangular 2x2
// pattern, built from the conserved corner positions and angle pair.
QuarticModel generic_quartic(Point A, Point C, Point G, Point I,
                             double alpha, double beta);

// Trajectory curve (X^2+Y^2)^2 - aX^2 - bY^2 + c = 0 of a rectangular-regime
// pattern, in the centered frame with the horizontal axis along the flat row.
// When only beta is flat the axes are relabeled by the quarter-turn symmetry.
QuarticModel rectangular_quartic(const TorusPattern& p, double tol = 1e-7);

// Signed residual at M, normalized by scale^4.
double quartic_residual(const QuarticModel& q, Point M);

struct RotationReport {
  double delta = 0.0;           // rotation step angle
  double max_step_dev = 0.0;    // worst |E_{t+1} - predicted| / scale
  double max_double_dev = 0.0;  // worst double-step deviation / scale
  int steps = 0;
};

// For the all-rectangles case: checks that successive normalized positions of
// E follow reflect-then-rotate steps of angle delta about the center, with
// cos(delta) = (xI^2 - yI^2)/(xI^2 + yI^2), sin(delta) = 2 xI yI/(xI^2 + yI^2).
RotationReport rotation_law_check(const TorusPattern& p, int steps,
                                  double regime_tol = 1e-7);

}  // namespace miquel
