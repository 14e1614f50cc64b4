#include "miquel/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace miquel {

namespace {
// Floor division for the lattice reduction.
long long fdiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
}  // namespace

TorusPattern::TorusPattern(int m, int n, int s, std::vector<Point> vertices,
                           Vec2 u, Vec2 v)
    : m_(m), n_(n), s_(s), verts_(std::move(vertices)), u_(u), v_(v) {
  if (m_ <= 0 || m_ % 2 != 0)
    throw InvalidParameters("m must be a positive even integer");
  if (n_ <= 0) throw InvalidParameters("n must be a positive integer");
  if (s_ < 0 || s_ >= m_) throw InvalidParameters("s must satisfy 0 <= s < m");
  if (((s_ - n_) % 2 + 2) % 2 != 0)
    throw InvalidParameters("s must have the parity of n (checkerboard compatibility)");
  if (verts_.size() != static_cast<std::size_t>(m_) * n_)
    throw InvalidParameters("vertex array must hold m*n points");
  for (const Point& p : verts_)
    if (!p.finite()) throw InvalidParameters("vertex coordinates must be finite");
  if (!u_.finite() || !v_.finite())
    throw InvalidParameters("monodromy vectors must be finite");
}

Point TorusPattern::unfold(int x, int y) const {
  const long long b = fdiv(y, n_);
  const long long y0 = y - b * n_;
  const long long xs = x - b * s_;
  const long long a = fdiv(xs, m_);
  const long long x0 = xs - a * m_;
  return verts_[static_cast<std::size_t>(y0) * m_ + x0] +
         static_cast<double>(a) * u_ + static_cast<double>(b) * v_;
}

std::array<Point, 4> TorusPattern::face_corners(int fx, int fy) const {
  return {unfold(fx, fy), unfold(fx + 1, fy), unfold(fx + 1, fy + 1),
          unfold(fx, fy + 1)};
}

double TorusPattern::diameter() const {
  std::vector<Point> patch;
  patch.reserve(static_cast<std::size_t>(m_ + 1) * (n_ + 1));
  for (int y = 0; y <= n_; ++y)
    for (int x = 0; x <= m_; ++x) patch.push_back(unfold(x, y));
  double d = 0;
  for (std::size_t i = 0; i < patch.size(); ++i)
    for (std::size_t j = i + 1; j < patch.size(); ++j)
      d = std::max(d, dist(patch[i], patch[j]));
  return d;
}

TorusPattern TorusPattern::translated(Vec2 t) const {
  std::vector<Point> verts = verts_;
  for (Point& p : verts) p += t;
  return TorusPattern(m_, n_, s_, std::move(verts), u_, v_);
}

TorusPattern standard_grid(int m, int n, int s) {
  std::vector<Point> verts;
  verts.reserve(static_cast<std::size_t>(m) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) verts.emplace_back(x, y);
  return TorusPattern(m, n, s, std::move(verts),
                      Vec2(m, 0), Vec2(s, n));
}

Circle face_circle(const TorusPattern& p, FaceId f, double tol) {
  const auto c = p.face_corners(f.fx, f.fy);
  const double resid = concyclicity_residual(c[0], c[1], c[2], c[3]);
  if (resid > tol) {
    std::ostringstream os;
    os << "face_circle: face (" << f.i() << "," << f.j()
       << ") not concyclic, residual " << resid;
    throw InvalidPattern(os.str());
  }
  return circle_through(std::span<const Point, 4>(c));
}

std::string ValidationReport::summary() const {
  std::ostringstream os;
  os << (pass ? "valid" : "INVALID")
     << "; worst face (" << worst_face.i() << "," << worst_face.j()
     << ") residual " << worst_residual
     << "; min center separation " << worst_separation.separation
     << " between (" << worst_separation.a.i() << "," << worst_separation.a.j()
     << ") and (" << worst_separation.b.i() << "," << worst_separation.b.j() << ")";
  return os.str();
}

ValidationReport validate(const TorusPattern& p, const ValidateOptions& opt) {
  ValidationReport rep;
  rep.pass = true;
  rep.worst_separation.separation = std::numeric_limits<double>::infinity();

  std::vector<Circle> circles(static_cast<std::size_t>(p.m()) * p.n());
  std::vector<bool> face_ok(circles.size(), true);
  double mean_radius = 0;
  int radius_count = 0;

  for (int fy = 0; fy < p.n(); ++fy) {
    for (int fx = 0; fx < p.m(); ++fx) {
      const FaceId f{fx, fy};
      double resid;
      bool ok = true;
      try {
        const auto c = p.face_corners(fx, fy);
        resid = concyclicity_residual(c[0], c[1], c[2], c[3]);
        circles[fy * p.m() + fx] = circle_through(std::span<const Point, 4>(c));
        mean_radius += circles[fy * p.m() + fx].radius;
        ++radius_count;
      } catch (const DegenerateGeometry&) {
        resid = std::numeric_limits<double>::infinity();
        ok = false;
      }
      rep.face_residuals.push_back({f, resid});
      if (resid >= rep.worst_residual || !ok) {
        rep.worst_residual = resid;
        rep.worst_face = f;
      }
      if (!(resid < opt.concyclicity_tol)) {
        rep.pass = false;
        face_ok[fy * p.m() + fx] = ok = false;
      }
      face_ok[fy * p.m() + fx] = ok && face_ok[fy * p.m() + fx];
    }
  }
  if (radius_count == 0) return rep;
  mean_radius /= radius_count;

  // Center of a face at arbitrary coordinates: the reduced face's circle
  // translated by the unfolding offset.
  auto center_at = [&](int fx, int fy) -> Point {
    const long long b = fdiv(fy, p.n());
    const long long y0 = fy - b * p.n();
    const long long xs = fx - b * p.s();
    const long long a = fdiv(xs, p.m());
    const long long x0 = xs - a * p.m();
    const Circle& c = circles[y0 * p.m() + x0];
    return c.center + static_cast<double>(a) * p.u() + static_cast<double>(b) * p.v();
  };
  auto reduced_ok = [&](int fx, int fy) {
    const long long b = fdiv(fy, p.n());
    const long long y0 = fy - b * p.n();
    const long long xs = fx - b * p.s();
    const long long a = fdiv(xs, p.m());
    const long long x0 = xs - a * p.m();
    return face_ok[y0 * p.m() + x0];
  };

  // Axis neighbors (the dual edges) plus the diagonal pairs the definition
  // implies are distinct as well.
  const int offs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {-1, 1}};
  for (int fy = 0; fy < p.n(); ++fy) {
    for (int fx = 0; fx < p.m(); ++fx) {
      if (!face_ok[fy * p.m() + fx]) continue;
      for (const auto& o : offs) {
        const int gx = fx + o[0], gy = fy + o[1];
        if (!reduced_ok(gx, gy)) continue;
        const double sep = dist(center_at(fx, fy), center_at(gx, gy)) / mean_radius;
        CenterSeparation cs{FaceId{fx, fy}, FaceId{gx, gy}, sep};
        rep.center_separations.push_back(cs);
        if (sep < rep.worst_separation.separation) rep.worst_separation = cs;
        if (!(sep > opt.center_tol)) rep.pass = false;
      }
    }
  }
  return rep;
}

}  // namespace miquel
