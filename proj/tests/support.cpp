#include "support.hpp"

#include <algorithm>

namespace testsup {

FittedConic fit_conic_oracle(const std::vector<Point>& pts) {
  // Normalize the frame, then find the least-squares null vector of the
  // n x 6 design matrix via the eigenvector of A^T A with smallest
  // eigenvalue (Jacobi iteration on the 6x6 symmetric matrix).
  Vec2 g{0, 0};
  for (const Point& p : pts) g += p;
  g = g / static_cast<double>(pts.size());
  double scale = 0;
  for (const Point& p : pts) scale = std::max(scale, dist(p, g));

  double ata[6][6] = {};
  for (const Point& p : pts) {
    const double X = (p.x - g.x) / scale, Y = (p.y - g.y) / scale;
    const double row[6] = {X * X, X * Y, Y * Y, X, Y, 1.0};
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) ata[i][j] += row[i] * row[j];
  }
  // Cyclic Jacobi eigen decomposition.
  double v[6][6] = {};
  for (int i = 0; i < 6; ++i) v[i][i] = 1.0;
  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) off += ata[i][j] * ata[i][j];
    if (off < 1e-30) break;
    for (int i = 0; i < 6; ++i)
      for (int j = i + 1; j < 6; ++j) {
        if (std::abs(ata[i][j]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2 * ata[i][j], ata[j][j] - ata[i][i]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < 6; ++k) {
          const double aik = ata[i][k], ajk = ata[j][k];
          ata[i][k] = c * aik - s * ajk;
          ata[j][k] = s * aik + c * ajk;
        }
        for (int k = 0; k < 6; ++k) {
          const double aki = ata[k][i], akj = ata[k][j];
          ata[k][i] = c * aki - s * akj;
          ata[k][j] = s * aki + c * akj;
        }
        for (int k = 0; k < 6; ++k) {
          const double vki = v[k][i], vkj = v[k][j];
          v[k][i] = c * vki - s * vkj;
          v[k][j] = s * vki + c * vkj;
        }
      }
  }
  int best = 0;
  for (int i = 1; i < 6; ++i)
    if (ata[i][i] < ata[best][best]) best = i;
  FittedConic out;
  out.center = g;
  out.scale = scale;
  double mx = 0;
  for (int i = 0; i < 6; ++i) mx = std::max(mx, std::abs(v[i][best]));
  for (int i = 0; i < 6; ++i) out.c[i] = v[i][best] / mx;
  return out;
}

Point point_on_conic(const Conic& conic, Point base, Vec2 dir) {
  // f(t) = a t^2 + b t + f(0) along base + t*dir, with f(0) ~ 0.
  const double f0 = conic.eval(base);
  const double f1 = conic.eval(base + dir);
  const double fm = conic.eval(base - dir);
  const double a = 0.5 * (f1 + fm) - f0;
  const double b = 0.5 * (f1 - fm);
  if (std::abs(a) < 1e-13)
    throw DegenerateConfiguration("point_on_conic: direction hits no second point");
  return base + dir * (-b / a);
}

std::vector<std::pair<double, double>> lemma52_bruteforce(
    const std::vector<double>& c, const std::vector<double>& d, int p) {
  double tail = 0;
  for (double a : c) tail += a;
  for (double a : d) tail += a;
  // c0 + d0 = S0 with S0 in (0, 4pi) congruent to 2*p*pi - tail mod 4*pi.
  double S0 = std::fmod(2 * p * M_PI - tail, 2 * kTau);
  while (S0 <= 0) S0 += 2 * kTau;

  double pc = 1, pd = 1;
  for (double a : c) pc *= std::sin(a / 2);
  for (double a : d) pd *= std::sin(a / 2);
  auto fun = [&](double c0) {
    return std::sin(c0 / 2) * pc - std::sin((S0 - c0) / 2) * pd;
  };
  const double lo = std::max(0.0, S0 - kTau), hi = std::min(kTau, S0);
  std::vector<std::pair<double, double>> roots;
  const int steps = 20000;
  double prev_x = lo + 1e-9, prev_f = fun(prev_x);
  for (int i = 1; i <= steps; ++i) {
    const double x = lo + (hi - lo - 2e-9) * i / steps + 1e-9;
    const double fx = fun(x);
    if (prev_f == 0 || prev_f * fx < 0) {
      double a = prev_x, b = x;
      for (int it = 0; it < 200; ++it) {
        const double mid = (a + b) / 2;
        if (fun(a) * fun(mid) <= 0)
          b = mid;
        else
          a = mid;
      }
      roots.push_back({(a + b) / 2, S0 - (a + b) / 2});
    }
    prev_x = x;
    prev_f = fx;
  }
  return roots;
}

std::optional<MiquelConfig> make_miquel_config(std::mt19937& g, double perturb) {
  // Four concyclic A-points on a random circle, then one circle through each
  // consecutive A-pair with a random bisector offset.
  const double R = std::exp(uniform(g, -0.5, 1.0));
  const Point O{uniform(g, -2, 2), uniform(g, -2, 2)};
  double ang[4];
  for (int i = 0; i < 4; ++i) ang[i] = uniform(g, 0, kTau);
  std::sort(ang, ang + 4);
  for (int i = 0; i < 4; ++i) {
    const double gap = (i + 1 < 4 ? ang[i + 1] : ang[0] + kTau) - ang[i];
    if (gap < 0.35) return std::nullopt;  // keep the quadrilateral fat
  }
  MiquelConfig cfg;
  for (int i = 0; i < 4; ++i)
    cfg.a_points[i] = O + Vec2{R * std::cos(ang[i]), R * std::sin(ang[i])};

  if (perturb != 0.0) {
    // Push A_12 radially off the common circle.
    const Vec2 dir = (cfg.a_points[0] - O) / dist(cfg.a_points[0], O);
    cfg.a_points[0] += dir * (perturb * R);
  }

  // Circle i passes through A_{i-1,i} = a_points[(i+3)%4] and A_{i,i+1} =
  // a_points[i]; its center sits on their bisector.
  for (int i = 0; i < 4; ++i) {
    const Point P = cfg.a_points[(i + 3) % 4];
    const Point Q = cfg.a_points[i];
    const Vec2 mid = (P + Q) / 2.0;
    const Vec2 nrm = (Q - P).rot90() / dist(P, Q);
    const double off = uniform(g, -1.2, 1.2);
    const Point center = mid + nrm * off;
    cfg.circles[i] = Circle{center, dist(center, P)};
    if (cfg.circles[i].radius < 0.2 * R) return std::nullopt;
  }
  for (int i = 0; i < 4; ++i) {
    const Circle& ci = cfg.circles[i];
    const Circle& cj = cfg.circles[(i + 1) % 4];
    // B via the independent quadratic solver: the intersection farther from A.
    const auto hits = circle_intersections_oracle(ci, cj);
    if (hits.size() != 2) return std::nullopt;
    cfg.b_points[i] = dist(hits[0], cfg.a_points[i]) > dist(hits[1], cfg.a_points[i])
                          ? hits[0]
                          : hits[1];
    try {
      cfg.thetas[i] = exterior_angle(ci, cj, cfg.a_points[i], 1e-6);
    } catch (const Error&) {
      return std::nullopt;
    }
    if (dist(cfg.b_points[i], cfg.a_points[i]) < 0.05 * R) return std::nullopt;
  }
  return cfg;
}

}  // namespace testsup
