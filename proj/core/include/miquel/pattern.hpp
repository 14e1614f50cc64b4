#pragma once

#include <string>
#include <vector>

#include "miquel/geometry.hpp"

namespace miquel {

// A face of the square grid, identified by its south-west corner (fx, fy);
// the face center sits at the half-integer pair (fx + 1/2, fy + 1/2).
struct FaceId {
  int fx = 0;
  int fy = 0;

  double i() const { return fx + 0.5; }
  double j() const { return fy + 0.5; }
  // Checkerboard coloring: black iff j - i is even.
  bool black() const { return ((fy - fx) % 2) == 0; }

  friend bool operator==(FaceId a, FaceId b) { return a.fx == b.fx && a.fy == b.fy; }
  friend auto operator<=>(FaceId a, FaceId b) = default;
};

// A biperiodic square-grid vertex cloud: an m x n fundamental domain of
// vertices plus the two monodromy vectors u (period (m,0)) and v (period
// (s,n)). Construction checks the combinatorial parameters only; geometric
// validity (concyclic faces, separated circumcenters) is the job of
// validate().
class TorusPattern {
 public:
  TorusPattern(int m, int n, int s, std::vector<Point> vertices, Vec2 u, Vec2 v);

  int m() const { return m_; }
  int n() const { return n_; }
  int s() const { return s_; }
  const Vec2& u() const { return u_; }
  const Vec2& v() const { return v_; }

  // Vertex of the fundamental domain, 0 <= x < m, 0 <= y < n.
  const Point& vertex(int x, int y) const { return verts_[y * m_ + x]; }
  Point& vertex(int x, int y) { return verts_[y * m_ + x]; }
  const std::vector<Point>& vertices() const { return verts_; }

  // S(x, y) for arbitrary integers, via the exact group action
  // S(x + a*m + b*s, y + b*n) = S(x, y) + a*u + b*v.
  Point unfold(int x, int y) const;

  // The four corners of face (fx, fy) in SW, SE, NE, NW order; works for
  // faces outside the fundamental domain.
  std::array<Point, 4> face_corners(int fx, int fy) const;

  // Largest pairwise distance over the unfolded (m+1) x (n+1) corner patch.
  double diameter() const;

  TorusPattern translated(Vec2 t) const;

 private:
  int m_, n_, s_;
  std::vector<Point> verts_;
  Vec2 u_, v_;
};

// Circumcircle of a face; throws InvalidPattern when the face is not
// concyclic within `tol` (relative to the circumradius).
Circle face_circle(const TorusPattern& p, FaceId f, double tol = 1e-6);

// The standard embedding S(x,y) = (x,y); a fixed point of the dynamics.
TorusPattern standard_grid(int m, int n, int s);

struct FaceResidual {
  FaceId face;
  double residual = 0.0;  // relative concyclicity residual
};

struct CenterSeparation {
  FaceId a, b;
  double separation = 0.0;  // |O_a - O_b| / mean circumradius
};

struct ValidationReport {
  bool pass = false;
  std::vector<FaceResidual> face_residuals;
  std::vector<CenterSeparation> center_separations;  // axis + diagonal dual edges
  FaceId worst_face;
  double worst_residual = 0.0;
  CenterSeparation worst_separation;
  std::string summary() const;
};

struct ValidateOptions {
  double concyclicity_tol = kGeomTol;  // relative, per face
  double center_tol = kGeomTol;        // x mean circumradius
};

// Checks every face for concyclicity and every pair of neighboring (axis and
// diagonal) circumcenters for separation. Never throws; failures are carried
// in the report.
ValidationReport validate(const TorusPattern& p, const ValidateOptions& opt = {});

}  // namespace miquel
