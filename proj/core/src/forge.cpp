#include "miquel/forge.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace miquel {

namespace {

struct Problem {
  int m, n, s;
  bool isoradial;
  Point pin0, pin1;  // seed positions of S(0,0) and S(1,0), held fixed
  int n_vars = 0;
  int n_resid = 0;
  double collapse_threshold = 0;  // corners closer than this are pushed apart

  TorusPattern unpack(const Eigen::VectorXd& x) const {
    std::vector<Point> verts(static_cast<std::size_t>(m) * n);
    verts[0] = pin0;
    verts[1] = pin1;
    int k = 0;
    for (int y = 0; y < n; ++y)
      for (int xx = 0; xx < m; ++xx) {
        if (y == 0 && xx < 2) continue;
        verts[y * m + xx] = Point{x[k], x[k + 1]};
        k += 2;
      }
    const Vec2 u{x[k], x[k + 1]};
    const Vec2 v{x[k + 2], x[k + 3]};
    return TorusPattern(m, n, s, std::move(verts), u, v);
  }

  // False when an iterate degenerates (collinear face); the step is rejected.
  bool residuals(const Eigen::VectorXd& x, Eigen::VectorXd& r) const {
    const TorusPattern p = unpack(x);
    int k = 0;
    std::vector<double> radii;
    if (isoradial) radii.reserve(static_cast<std::size_t>(m) * n);
    for (int fy = 0; fy < n; ++fy)
      for (int fx = 0; fx < m; ++fx) {
        const auto c = p.face_corners(fx, fy);
        Circle circ;
        try {
          circ = circle_through(std::span<const Point, 4>(c));
        } catch (const DegenerateGeometry&) {
          return false;
        }
        for (const Point& q : c) r[k++] = dist(q, circ.center) - circ.radius;
        // Soft barrier against corner collapse; identically zero on any
        // cleanly separated face, so converged solutions are unaffected.
        for (int i = 0; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j)
            r[k++] = std::max(0.0, collapse_threshold - dist(c[i], c[j]));
        if (isoradial) radii.push_back(circ.radius);
      }
    if (isoradial) {
      const double rho = x[n_vars - 1];
      for (double rad : radii) r[k++] = rad - rho;
    }
    return true;
  }
};

double worst_relative_residual(const TorusPattern& p, bool isoradial) {
  double worst = 0, rmin = 1e300, rmax = 0;
  try {
    for (int fy = 0; fy < p.n(); ++fy)
      for (int fx = 0; fx < p.m(); ++fx) {
        const auto c = p.face_corners(fx, fy);
        worst = std::max(worst, concyclicity_residual(c[0], c[1], c[2], c[3]));
        if (isoradial) {
          const double r = circle_through(std::span<const Point, 4>(c)).radius;
          rmin = std::min(rmin, r);
          rmax = std::max(rmax, r);
        }
      }
  } catch (const DegenerateGeometry&) {
    return std::numeric_limits<double>::infinity();
  }
  if (isoradial) worst = std::max(worst, (rmax - rmin) / rmax);
  return worst;
}

}  // namespace

ForgeResult forge_pattern(const TorusPattern& seed, const ForgeOptions& opt) {
  Problem pb;
  pb.m = seed.m();
  pb.n = seed.n();
  pb.s = seed.s();
  pb.isoradial = opt.isoradial;
  pb.pin0 = seed.vertex(0, 0);
  pb.pin1 = seed.vertex(1, 0);
  if (dist(pb.pin0, pb.pin1) <= kGeomTol)
    throw InvalidParameters("forge_pattern: pinned vertices S(0,0), S(1,0) coincide");

  const int faces = pb.m * pb.n;
  pb.n_vars = 2 * (faces - 2) + 4 + (pb.isoradial ? 1 : 0);
  pb.n_resid = (4 + 6) * faces + (pb.isoradial ? faces : 0);
  {
    double edge_sum = 0;
    int edges = 0;
    for (int fy = 0; fy < pb.n; ++fy)
      for (int fx = 0; fx < pb.m; ++fx) {
        const auto c = seed.face_corners(fx, fy);
        for (int i = 0; i < 4; ++i) edge_sum += dist(c[i], c[(i + 1) % 4]), ++edges;
      }
    pb.collapse_threshold = 0.02 * edge_sum / std::max(edges, 1);
  }

  Eigen::VectorXd x(pb.n_vars);
  {
    int k = 0;
    for (int y = 0; y < pb.n; ++y)
      for (int xx = 0; xx < pb.m; ++xx) {
        if (y == 0 && xx < 2) continue;
        x[k++] = seed.vertex(xx, y).x;
        x[k++] = seed.vertex(xx, y).y;
      }
    x[k++] = seed.u().x;
    x[k++] = seed.u().y;
    x[k++] = seed.v().x;
    x[k++] = seed.v().y;
    if (pb.isoradial) {
      double rsum = 0;
      try {
        for (int fy = 0; fy < pb.n; ++fy)
          for (int fx = 0; fx < pb.m; ++fx) {
            const auto c = seed.face_corners(fx, fy);
            rsum += circle_through(std::span<const Point, 4>(c)).radius;
          }
      } catch (const DegenerateGeometry&) {
        throw ForgeFailed("forge_pattern: seed has a degenerate face");
      }
      x[k++] = rsum / faces;
    }
  }

  Eigen::VectorXd r(pb.n_resid), r_try(pb.n_resid);
  Eigen::MatrixXd J(pb.n_resid, pb.n_vars);
  if (!pb.residuals(x, r))
    throw ForgeFailed("forge_pattern: seed has a degenerate face");
  double cost = r.squaredNorm();
  double lambda = 1e-4;
  int iter = 0;

  const double scale = std::max(seed.diameter(), 1e-12);

  for (; iter < opt.max_iter; ++iter) {
    {
      const TorusPattern cur = pb.unpack(x);
      const double rel = worst_relative_residual(cur, pb.isoradial);
      if (rel < opt.tol) {
        ValidationReport rep = validate(cur);
        if (!rep.pass)
          throw ForgeDegenerate("forge_pattern: converged to invalid pattern: " +
                                rep.summary());
        return ForgeResult{cur, rel, iter};
      }
    }

    // Central-difference Jacobian, falling back to one-sided when a
    // perturbation degenerates a face.
    Eigen::VectorXd xp = x;
    Eigen::VectorXd rp(pb.n_resid), rm(pb.n_resid);
    for (int jcol = 0; jcol < pb.n_vars; ++jcol) {
      const double h = 6e-6 * std::max(1.0, std::abs(x[jcol]));
      xp[jcol] = x[jcol] + h;
      const bool okp = pb.residuals(xp, rp);
      xp[jcol] = x[jcol] - h;
      const bool okm = pb.residuals(xp, rm);
      xp[jcol] = x[jcol];
      if (okp && okm)
        J.col(jcol) = (rp - rm) / (2.0 * h);
      else if (okp)
        J.col(jcol) = (rp - r) / h;
      else if (okm)
        J.col(jcol) = (r - rm) / h;
      else
        J.col(jcol).setZero();
    }

    const Eigen::MatrixXd JtJ = J.transpose() * J;
    const Eigen::VectorXd g = J.transpose() * r;

    bool accepted = false;
    for (int attempt = 0; attempt < 40 && !accepted; ++attempt) {
      Eigen::MatrixXd A = JtJ;
      for (int d = 0; d < pb.n_vars; ++d)
        A(d, d) += lambda * std::max(JtJ(d, d), 1e-12);
      const Eigen::VectorXd step = A.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 10;
        continue;
      }
      const Eigen::VectorXd x_new = x + step;
      const bool ok = pb.residuals(x_new, r_try);
      const double cost_new = ok ? r_try.squaredNorm()
                                 : std::numeric_limits<double>::infinity();
      if (cost_new < cost) {
        x = x_new;
        r = r_try;
        cost = cost_new;
        lambda = std::max(lambda / 3.0, 1e-14);
        accepted = true;
      } else {
        lambda *= 10;
        if (lambda > 1e14) break;
      }
    }
    if (!accepted) break;  // stalled; final residual check below
  }

  const TorusPattern cur = pb.unpack(x);
  const double rel = worst_relative_residual(cur, pb.isoradial);
  if (rel < opt.tol) {
    ValidationReport rep = validate(cur);
    if (!rep.pass)
      throw ForgeDegenerate("forge_pattern: converged to invalid pattern: " +
                            rep.summary());
    return ForgeResult{cur, rel, iter};
  }
  std::ostringstream os;
  os << "forge_pattern: no convergence after " << iter
     << " iterations, residual " << rel << " (target " << opt.tol
     << ", scale " << scale << ")";
  throw ForgeFailed(os.str());
}

}  // namespace miquel
