#pragma once

#include <map>
#include <vector>

#include "miquel/coords.hpp"
#include "miquel/pattern.hpp"

namespace miquel {

enum class Axis { horizontal, vertical };

// Undirected dual edge, keyed by the face on its lower/left end. Horizontal
// edges join (fx,fy)-(fx+1,fy), vertical ones (fx,fy)-(fx,fy+1).
struct DualEdgeKey {
  FaceId from;
  Axis axis = Axis::horizontal;
  friend auto operator<=>(const DualEdgeKey&, const DualEdgeKey&) = default;
};

// A step of a directed dual loop, between two adjacent faces (arbitrary,
// unreduced coordinates; reduction happens internally).
struct DirectedDualEdge {
  FaceId from;
  FaceId to;
};

// Exterior intersection angles of neighboring circumcircles, evaluated at the
// shared base vertex (lower vertex for horizontal edges, left vertex for
// vertical ones). Cross-checked against the phi expression
// theta = pi - (phi + phi')/2.
std::map<DualEdgeKey, double> theta_map(const TorusPattern& p);

// Sign of a directed dual edge: +1 for vertical black->white and horizontal
// white->black, -1 otherwise.
int epsilon_sign(const DirectedDualEdge& e);

// Signed sum of exterior angles along a closed directed dual loop, mod 2*pi.
// Zero on null-homologous loops. Throws InvalidLoop when the steps do not
// chain, are not adjacent, or the loop does not close on the torus.
double gamma(const TorusPattern& p, const std::vector<DirectedDualEdge>& loop);

struct GammaValue {
  double horizontal = 0.0;  // canonical loop along the dual row j = 1/2
  double vertical = 0.0;    // canonical column loop, closed through s east steps
};

GammaValue gamma_generators(const TorusPattern& p);

// The canonical generator loops themselves (useful for reports and tests).
std::vector<DirectedDualEdge> horizontal_generator(const TorusPattern& p);
std::vector<DirectedDualEdge> vertical_generator(const TorusPattern& p);

// Real and imaginary parts of (v_x + i v_y) / (u_x + i u_y); conserved along
// orbits. Throws NonGeneric when u vanishes.
std::pair<double, double> monodromy_ratio(const TorusPattern& p);

struct IsoradialReport {
  bool is_isoradial = false;
  long long period = 0;          // lcm(m, m*n / gcd(m, s)), gcd(m, 0) = m
  double radius_spread = 0.0;    // relative
  double phi_mismatch = 0.0;     // worst kite phi disagreement (complement-aware)
};

// Equal-radius test, cross-checked against the kite phi equalities; the two
// must agree whenever the radius spread is decisively inside or outside
// tolerance. The period is a pure function of (m, n, s).
IsoradialReport isoradial_check(const TorusPattern& p, double tol = 1e-9);

// Direct radius check behind the m x 1 theorem: patterns with n = 1 and
// s in {1, m-1} are isoradial. Requires those parameters.
bool m_by_1_isoradiality(const TorusPattern& p, double tol = 1e-8);

struct InvariantReport {
  GammaValue gamma;
  std::pair<double, double> monodromy;
  bool is_isoradial = false;
  long long period = 0;
  double worst_theta_vertex_sum = 0.0;  // residual of sum theta = 0 mod 2*pi
};

InvariantReport invariant_report(const TorusPattern& p);

}  // namespace miquel
