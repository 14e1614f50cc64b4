#include "miquel/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace miquel {

namespace {
long long fdiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

FaceId reduce_face(const TorusPattern& p, FaceId f) {
  const long long b = fdiv(f.fy, p.n());
  const long long y0 = f.fy - b * p.n();
  const long long xs = f.fx - b * p.s();
  const long long a = fdiv(xs, p.m());
  return FaceId{static_cast<int>(xs - a * p.m()), static_cast<int>(y0)};
}

Circle circle_at(const TorusPattern& p, int fx, int fy) {
  const auto c = p.face_corners(fx, fy);
  return circle_through(std::span<const Point, 4>(c));
}
}  // namespace

std::map<DualEdgeKey, double> theta_map(const TorusPattern& p) {
  std::map<DualEdgeKey, double> out;
  const PhiField phi = extract_phi(p);
  for (int fy = 0; fy < p.n(); ++fy) {
    for (int fx = 0; fx < p.m(); ++fx) {
      const Circle here = circle_at(p, fx, fy);
      {  // horizontal edge to (fx+1, fy), base point the lower shared vertex
        const Circle east = circle_at(p, fx + 1, fy);
        const Point at = p.unfold(fx + 1, fy);
        const double th = oriented_angle(east.center, at, here.center);
        const double via_phi = normalize_angle(
            M_PI - 0.5 * (phi.at(fx, fy, Dir::E) + phi.at(fx + 1, fy, Dir::W)));
        if (angle_dist(th, via_phi) > 1e-6)
          throw InconsistentPattern("theta_map: geometric angle disagrees with phi expression");
        out[{FaceId{fx, fy}, Axis::horizontal}] = th;
      }
      {  // vertical edge to (fx, fy+1), base point the left shared vertex
        const Circle north = circle_at(p, fx, fy + 1);
        const Point at = p.unfold(fx, fy + 1);
        const double th = oriented_angle(here.center, at, north.center);
        const double via_phi = normalize_angle(
            M_PI - 0.5 * (phi.at(fx, fy, Dir::N) + phi.at(fx, fy + 1, Dir::S)));
        if (angle_dist(th, via_phi) > 1e-6)
          throw InconsistentPattern("theta_map: geometric angle disagrees with phi expression");
        out[{FaceId{fx, fy}, Axis::vertical}] = th;
      }
    }
  }
  return out;
}

int epsilon_sign(const DirectedDualEdge& e) {
  const bool vertical = (e.to.fx - e.from.fx == 0);
  const bool from_black = e.from.black();
  if (vertical) return from_black ? +1 : -1;
  return from_black ? -1 : +1;
}

namespace {
// Canonical (reduced) undirected key of a directed step, or throws.
DualEdgeKey undirected_key(const TorusPattern& p, const DirectedDualEdge& e) {
  const int dx = e.to.fx - e.from.fx, dy = e.to.fy - e.from.fy;
  if (std::abs(dx) + std::abs(dy) != 1)
    throw InvalidLoop("gamma: loop steps must join adjacent faces");
  FaceId base = (dx + dy > 0) ? e.from : e.to;
  return {reduce_face(p, base), dx != 0 ? Axis::horizontal : Axis::vertical};
}
}  // namespace

double gamma(const TorusPattern& p, const std::vector<DirectedDualEdge>& loop) {
  if (loop.empty()) throw InvalidLoop("gamma: empty loop");
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const auto& cur = loop[i];
    const auto& next = loop[(i + 1) % loop.size()];
    if (!(reduce_face(p, cur.to) == reduce_face(p, next.from)))
      throw InvalidLoop("gamma: steps do not chain on the torus");
  }
  const auto thetas = theta_map(p);
  double sum = 0;
  for (const auto& e : loop) {
    const double th = thetas.at(undirected_key(p, e));
    sum += epsilon_sign(e) * th;
  }
  return normalize_angle(sum);
}

std::vector<DirectedDualEdge> horizontal_generator(const TorusPattern& p) {
  std::vector<DirectedDualEdge> loop;
  for (int k = 0; k < p.m(); ++k)
    loop.push_back({FaceId{k, 0}, FaceId{k + 1, 0}});
  return loop;
}

std::vector<DirectedDualEdge> vertical_generator(const TorusPattern& p) {
  std::vector<DirectedDualEdge> loop;
  for (int k = 0; k < p.n(); ++k)
    loop.push_back({FaceId{0, k}, FaceId{0, k + 1}});
  // (0, n) reduces to (-s, 0); close with s east steps.
  for (int k = -p.s(); k < 0; ++k)
    loop.push_back({FaceId{k, 0}, FaceId{k + 1, 0}});
  return loop;
}

GammaValue gamma_generators(const TorusPattern& p) {
  return {gamma(p, horizontal_generator(p)), gamma(p, vertical_generator(p))};
}

std::pair<double, double> monodromy_ratio(const TorusPattern& p) {
  const Vec2 u = p.u(), v = p.v();
  const double n2 = u.norm2();
  if (n2 <= 1e-24 * std::max(1.0, v.norm2()))
    throw NonGeneric("monodromy_ratio: vanishing horizontal monodromy");
  return {(u.x * v.x + u.y * v.y) / n2, (u.x * v.y - u.y * v.x) / n2};
}

IsoradialReport isoradial_check(const TorusPattern& p, double tol) {
  IsoradialReport rep;
  double rmin = 1e300, rmax = 0;
  for (int fy = 0; fy < p.n(); ++fy)
    for (int fx = 0; fx < p.m(); ++fx) {
      const double r = circle_at(p, fx, fy).radius;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
    }
  rep.radius_spread = (rmax - rmin) / rmax;
  rep.is_isoradial = rep.radius_spread < tol;

  // Kite characterization: the two phi values at each edge must agree, up to
  // the reflex complement phi -> 2*pi - phi (both describe the same rhombus).
  const PhiField f = extract_phi(p);
  double mismatch = 0;
  for (int fy = 0; fy < p.n(); ++fy)
    for (int fx = 0; fx < p.m(); ++fx) {
      const double e1 = f.at(fx, fy, Dir::E), w1 = f.at(fx + 1, fy, Dir::W);
      const double n1 = f.at(fx, fy, Dir::N), s1 = f.at(fx, fy + 1, Dir::S);
      mismatch = std::max(mismatch,
                          std::min(std::abs(e1 - w1), std::abs(e1 + w1 - kTau)));
      mismatch = std::max(mismatch,
                          std::min(std::abs(n1 - s1), std::abs(n1 + s1 - kTau)));
    }
  rep.phi_mismatch = mismatch;

  // The two tests must agree whenever the radius spread is decisive.
  const bool phi_says = mismatch < 1e-6;
  if (rep.radius_spread < tol && !phi_says)
    throw InconsistentPattern("isoradial_check: equal radii but kite phi mismatch");
  if (rep.radius_spread > 1e-6 && phi_says)
    throw InconsistentPattern("isoradial_check: kite phi equal but radii spread");

  const long long g = (p.s() == 0) ? p.m() : std::gcd((long long)p.m(), (long long)p.s());
  rep.period = std::lcm((long long)p.m(), (long long)(p.m() * p.n()) / g);
  return rep;
}

bool m_by_1_isoradiality(const TorusPattern& p, double tol) {
  if (p.n() != 1 || !(p.s() == 1 || p.s() == p.m() - 1))
    throw InvalidParameters("m_by_1_isoradiality: requires n = 1 and s in {1, m-1}");
  const ValidationReport rep = validate(p);
  if (!rep.pass)
    throw InvalidPattern("m_by_1_isoradiality: " + rep.summary());
  double rmin = 1e300, rmax = 0;
  for (int fx = 0; fx < p.m(); ++fx) {
    const double r = circle_at(p, fx, 0).radius;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  return (rmax - rmin) / rmax < tol;
}

InvariantReport invariant_report(const TorusPattern& p) {
  InvariantReport rep;
  rep.gamma = gamma_generators(p);
  rep.monodromy = monodromy_ratio(p);
  const IsoradialReport iso = isoradial_check(p);
  rep.is_isoradial = iso.is_isoradial;
  rep.period = iso.period;

  // Around every primal vertex the four surrounding theta sum to 0 mod 2*pi.
  const auto thetas = theta_map(p);
  auto th = [&](FaceId f, Axis a) {
    return thetas.at(DualEdgeKey{reduce_face(p, f), a});
  };
  double worst = 0;
  for (int y = 0; y < p.n(); ++y)
    for (int x = 0; x < p.m(); ++x) {
      const double sum = th(FaceId{x, y - 1}, Axis::vertical) +
                         th(FaceId{x - 1, y}, Axis::horizontal) +
                         th(FaceId{x - 1, y - 1}, Axis::vertical) +
                         th(FaceId{x - 1, y - 1}, Axis::horizontal);
      worst = std::max(worst, dist_to_multiple(sum, kTau));
    }
  rep.worst_theta_vertex_sum = worst;
  return rep;
}

}  // namespace miquel
