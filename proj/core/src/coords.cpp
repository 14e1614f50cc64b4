#include "miquel/coords.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace miquel {

namespace {
long long fdiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Reduce a face coordinate through the torus periods (m,0), (s,n).
std::pair<int, int> reduce_face(int m, int n, int s, int fx, int fy) {
  const long long b = fdiv(fy, n);
  const long long y0 = fy - b * n;
  const long long xs = fx - b * s;
  const long long a = fdiv(xs, m);
  return {static_cast<int>(xs - a * m), static_cast<int>(y0)};
}
}  // namespace

const char* dir_name(Dir d) {
  switch (d) {
    case Dir::N: return "N";
    case Dir::W: return "W";
    case Dir::S: return "S";
    case Dir::E: return "E";
  }
  return "?";
}

PhiField::PhiField(int m, int n, int s)
    : m_(m), n_(n), s_(s), vals_(static_cast<std::size_t>(m) * n * 4, 0.0) {
  if (m <= 0 || n <= 0) throw InvalidParameters("PhiField: m, n must be positive");
}

std::size_t PhiField::index(int fx, int fy, Dir d) const {
  auto [x0, y0] = reduce_face(m_, n_, s_, fx, fy);
  return (static_cast<std::size_t>(y0) * m_ + x0) * 4 + static_cast<int>(d);
}

double PhiField::max_angular_diff(const PhiField& o) const {
  double worst = 0;
  for (std::size_t i = 0; i < vals_.size(); ++i)
    worst = std::max(worst, angle_dist(vals_[i], o.vals_[i]));
  return worst;
}

XField::XField(int m, int n, int s)
    : m_(m), n_(n), s_(s), vals_(static_cast<std::size_t>(m) * n * 4) {}

std::size_t XField::index(int fx, int fy, Dir d) const {
  auto [x0, y0] = reduce_face(m_, n_, s_, fx, fy);
  return (static_cast<std::size_t>(y0) * m_ + x0) * 4 + static_cast<int>(d);
}

XField to_x(const PhiField& f) {
  XField x(f.m(), f.n(), f.s());
  for (int fy = 0; fy < f.n(); ++fy)
    for (int fx = 0; fx < f.m(); ++fx)
      for (int d = 0; d < 4; ++d)
        x.at(fx, fy, Dir(d)) = cis(f.at(fx, fy, Dir(d)));
  return x;
}

PhiField to_phi(const XField& x) {
  PhiField f(x.m(), x.n(), x.s());
  for (int fy = 0; fy < x.n(); ++fy)
    for (int fx = 0; fx < x.m(); ++fx)
      for (int d = 0; d < 4; ++d) {
        const auto z = x.at(fx, fy, Dir(d));
        const double mod = std::abs(z);
        if (std::abs(mod - 1.0) > 1e-9)
          throw InvalidParameters("to_phi: entry is not unit-modulus");
        f.at(fx, fy, Dir(d)) = normalize_angle(std::arg(z));
      }
  return f;
}

PhiField extract_phi(const TorusPattern& p) {
  PhiField f(p.m(), p.n(), p.s());
  for (int fy = 0; fy < p.n(); ++fy) {
    for (int fx = 0; fx < p.m(); ++fx) {
      const auto c = p.face_corners(fx, fy);  // SW SE NE NW
      const Point O = circle_through(std::span<const Point, 4>(c)).center;
      const double phiN = oriented_angle(c[2], O, c[3]);
      const double phiW = oriented_angle(c[3], O, c[0]);
      const double phiS = oriented_angle(c[0], O, c[1]);
      const double phiE = oriented_angle(c[1], O, c[2]);
      for (double v : {phiN, phiW, phiS, phiE})
        if (v < kAngTol || v > kTau - kAngTol)
          throw DegenerateGeometry("extract_phi: angle at the boundary of (0,2pi)");
      f.at(fx, fy, Dir::N) = phiN;
      f.at(fx, fy, Dir::W) = phiW;
      f.at(fx, fy, Dir::S) = phiS;
      f.at(fx, fy, Dir::E) = phiE;
    }
  }
  return f;
}

const ConditionEntry* ConditionReport::find(const std::string& label) const {
  for (const auto& e : entries)
    if (e.label == label) return &e;
  return nullptr;
}

std::string ConditionReport::summary() const {
  std::ostringstream os;
  os << (pass ? "admissible" : "INADMISSIBLE");
  for (const auto& e : entries)
    if (!e.pass) os << "; " << e.label << " fails at " << e.detail
                    << " (residual " << e.residual << ")";
  return os.str();
}

ConditionReport check_conditions(const PhiField& f, double tol) {
  const int m = f.m(), n = f.n(), s = f.s();
  ConditionReport rep;

  auto add = [&](const std::string& label, double residual, const std::string& detail) {
    const bool ok = residual < tol;
    rep.entries.push_back({label, detail, residual, ok});
    rep.worst = std::max(rep.worst, residual);
    rep.pass = rep.pass && ok;
  };
  auto face_tag = [](double i, double j) {
    std::ostringstream os;
    os << "face (" << i << "," << j << ")";
    return os.str();
  };

  // Biperiodicity holds by construction of the storage.
  add(s == 0 ? "Eq(9)" : "Eq(23)", 0.0, "by construction");

  // Openness of the diagonals: phi^N + phi^W and phi^N + phi^E must stay away
  // from 0 mod 2*pi. Scored 0 (satisfied) or 1 (violated).
  for (const char* which : {"Eq(10)", "Eq(11)"}) {
    double worst = 0;
    std::string detail = "all faces";
    for (int fy = 0; fy < n; ++fy)
      for (int fx = 0; fx < m; ++fx) {
        const Dir second = (which[3] == '0') ? Dir::W : Dir::E;
        const double d =
            dist_to_multiple(f.at(fx, fy, Dir::N) + f.at(fx, fy, second), kTau);
        if (d < kAngTol && worst == 0) {
          worst = 1.0;
          detail = face_tag(fx + 0.5, fy + 0.5);
        }
      }
    add(which, worst, detail);
  }

  {  // Eq(12): face flatness, sum of the four phi = 0 mod 2*pi.
    double worst = -1;
    std::string detail;
    for (int fy = 0; fy < n; ++fy)
      for (int fx = 0; fx < m; ++fx) {
        double sum = 0;
        for (int d = 0; d < 4; ++d) sum += f.at(fx, fy, Dir(d));
        const double r = dist_to_multiple(sum, kTau);
        if (r > worst) { worst = r; detail = face_tag(fx + 0.5, fy + 0.5); }
      }
    add("Eq(12)", worst, detail);
  }

  // The eight triangles around vertex (x, y) = (i + 1/2, j + 1/2):
  // black set and white set per the checkerboard of triangles.
  auto vertex_triangles = [&](int x, int y, bool black_set) {
    // T_b = {(x+1/2,y+1/2,W), (x-1/2,y+1/2,S), (x-1/2,y-1/2,E), (x+1/2,y-1/2,N)}
    // T_w = {(x+1/2,y+1/2,S), (x-1/2,y+1/2,E), (x-1/2,y-1/2,N), (x+1/2,y-1/2,W)}
    struct T { int fx, fy; Dir d; };
    if (black_set)
      return std::array<T, 4>{{{x, y, Dir::W}, {x - 1, y, Dir::S},
                               {x - 1, y - 1, Dir::E}, {x, y - 1, Dir::N}}};
    return std::array<T, 4>{{{x, y, Dir::S}, {x - 1, y, Dir::E},
                             {x - 1, y - 1, Dir::N}, {x, y - 1, Dir::W}}};
  };
  auto vertex_tag = [](int x, int y) {
    std::ostringstream os;
    os << "vertex (" << x << "," << y << ")";
    return os.str();
  };

  {  // Eq(13): vertex flatness, eight angles sum to 0 mod 4*pi.
    double worst = -1;
    std::string detail;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < m; ++x) {
        double sum = 0;
        for (bool black : {true, false})
          for (const auto& t : vertex_triangles(x, y, black))
            sum += f.at(t.fx, t.fy, t.d);
        const double r = dist_to_multiple(sum, 2 * kTau);
        if (r > worst) { worst = r; detail = vertex_tag(x, y); }
      }
    add("Eq(13)", worst, detail);
  }

  {  // Eq(14): vertex monodromy, equal sine-half products over the two sets.
    double worst = -1;
    std::string detail;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < m; ++x) {
        double lg = 0;
        for (const auto& t : vertex_triangles(x, y, true))
          lg += std::log(std::sin(f.at(t.fx, t.fy, t.d) / 2));
        for (const auto& t : vertex_triangles(x, y, false))
          lg -= std::log(std::sin(f.at(t.fx, t.fy, t.d) / 2));
        const double r = std::abs(lg);
        if (r > worst) { worst = r; detail = vertex_tag(x, y); }
      }
    add("Eq(14)", worst, detail);
  }

  auto col_tag = [](double i) {
    std::ostringstream os;
    os << "column i = " << i;
    return os.str();
  };
  auto row_tag = [](double j) {
    std::ostringstream os;
    os << "row j = " << j;
    return os.str();
  };

  if (s == 0) {
    {  // Eq(15): vertical monodromy.
      double worst = -1;
      std::string detail;
      for (int fx = 0; fx < m; ++fx) {
        double lg = 0;
        for (int fy = 0; fy < n; ++fy)
          lg += std::log(std::sin(f.at(fx, fy, Dir::N) / 2)) -
                std::log(std::sin(f.at(fx, fy, Dir::S) / 2));
        if (std::abs(lg) > worst) { worst = std::abs(lg); detail = col_tag(fx + 0.5); }
      }
      add("Eq(15)", worst, detail);
    }
  } else {
    // Eq(24): vertical monodromy with shift.
    double worst = -1;
    std::string detail;
    for (int fx = 0; fx < m; ++fx) {
      double lg = 0;
      for (int fy = 0; fy < n; ++fy)
        lg += std::log(std::sin(f.at(fx, fy, Dir::S) / 2));
      for (int i = fx + 1; i <= fx + s; ++i)
        lg += std::log(std::sin(f.at(i, n - 1, Dir::W) / 2));
      for (int fy = -1; fy < n - 1; ++fy)
        lg -= std::log(std::sin(f.at(fx, fy, Dir::N) / 2));
      for (int i = fx; i <= fx + s - 1; ++i)
        lg -= std::log(std::sin(f.at(i, n - 1, Dir::E) / 2));
      if (std::abs(lg) > worst) { worst = std::abs(lg); detail = col_tag(fx + 0.5); }
    }
    add("Eq(24)", worst, detail);
  }

  {  // Eq(16): horizontal monodromy.
    double worst = -1;
    std::string detail;
    for (int fy = 0; fy < n; ++fy) {
      double lg = 0;
      for (int fx = 0; fx < m; ++fx)
        lg += std::log(std::sin(f.at(fx, fy, Dir::W) / 2)) -
              std::log(std::sin(f.at(fx, fy, Dir::E) / 2));
      if (std::abs(lg) > worst) { worst = std::abs(lg); detail = row_tag(fy + 0.5); }
    }
    add("Eq(16)", worst, detail);
  }

  if (s == 0) {
    {  // Eq(17): vertical parallelism.
      double worst = -1;
      std::string detail;
      for (int fx = 0; fx < m; ++fx) {
        double sum = 0;
        for (int fy = 0; fy < n; ++fy)
          sum += f.at(fx, fy, Dir::W) - f.at(fx, fy, Dir::E);
        const double r = dist_to_multiple(sum, kTau);
        if (r > worst) { worst = r; detail = col_tag(fx + 0.5); }
      }
      add("Eq(17)", worst, detail);
    }
  } else {
    // Eq(25): vertical parallelism with shift.
    double worst = -1;
    std::string detail;
    for (int fx = 0; fx < m; ++fx) {
      double sum = 0;
      for (int fy = -1; fy < n - 1; ++fy) sum += f.at(fx, fy, Dir::W);
      for (int i = fx + 1; i <= fx + s; ++i) sum += f.at(i, n - 1, Dir::N);
      for (int fy = 0; fy < n; ++fy) sum -= f.at(fx, fy, Dir::E);
      for (int i = fx; i <= fx + s - 1; ++i) sum -= f.at(i, n - 1, Dir::S);
      const double r = dist_to_multiple(sum, kTau);
      if (r > worst) { worst = r; detail = col_tag(fx + 0.5); }
    }
    add("Eq(25)", worst, detail);
  }

  {  // Eq(18): horizontal parallelism.
    double worst = -1;
    std::string detail;
    for (int fy = 0; fy < n; ++fy) {
      double sum = 0;
      for (int fx = 0; fx < m; ++fx)
        sum += f.at(fx, fy, Dir::N) - f.at(fx, fy, Dir::S);
      const double r = dist_to_multiple(sum, kTau);
      if (r > worst) { worst = r; detail = row_tag(fy + 0.5); }
    }
    add("Eq(18)", worst, detail);
  }

  return rep;
}

namespace {

// Circumcenter seeing the directed chord P -> Q under oriented angle phi.
Point center_from_chord(Point P, Point Q, double phi) {
  const Vec2 d = Q - P;
  const double c = d.norm();
  if (c <= 0 || phi <= kAngTol || phi >= kTau - kAngTol)
    throw DegenerateGeometry("reconstruct: degenerate chord or angle");
  const Vec2 nhat = d.rot90() / c;
  return (P + Q) / 2.0 + nhat * ((c / 2.0) / std::tan(phi / 2.0));
}

Point rotate_about(Point center, Point p, double angle) {
  const auto z = to_complex(p - center) * cis(angle);
  return center + from_complex(z);
}

}  // namespace

TorusPattern reconstruct(const PhiField& f, double tol) {
  const ConditionReport rep = check_conditions(f, tol);
  if (!rep.pass)
    throw ConditionViolation("reconstruct: " + rep.summary());

  const int m = f.m(), n = f.n(), s = f.s();
  std::map<std::pair<int, int>, Point> V;
  V[{0, 0}] = Point{0, 0};
  V[{1, 0}] = Point{1, 0};
  double mismatch = 0;
  auto place = [&](int x, int y, Point pt) {
    auto it = V.find({x, y});
    if (it == V.end())
      V[{x, y}] = pt;
    else
      mismatch = std::max(mismatch, dist(it->second, pt));
  };

  // Face-by-face sweep over the (m x n) patch; each face is completed from one
  // already-known edge.
  std::vector<bool> done(static_cast<std::size_t>(m) * n, false);
  int remaining = m * n;
  while (remaining > 0) {
    bool progress = false;
    for (int fy = 0; fy < n && !progress; ++fy) {
      for (int fx = 0; fx < m && !progress; ++fx) {
        if (done[fy * m + fx]) continue;
        const std::pair<int, int> SW{fx, fy}, SE{fx + 1, fy}, NE{fx + 1, fy + 1},
            NW{fx, fy + 1};
        const bool hasSW = V.count(SW), hasSE = V.count(SE), hasNE = V.count(NE),
                   hasNW = V.count(NW);
        const double phiN = f.at(fx, fy, Dir::N), phiW = f.at(fx, fy, Dir::W),
                     phiS = f.at(fx, fy, Dir::S), phiE = f.at(fx, fy, Dir::E);
        if (hasSW && hasSE) {
          const Point O = center_from_chord(V[SW], V[SE], phiS);
          place(NW.first, NW.second, rotate_about(O, V[SW], -phiW));
          place(NE.first, NE.second, rotate_about(O, V[SE], phiE));
        } else if (hasNW && hasNE) {
          const Point O = center_from_chord(V[NE], V[NW], phiN);
          place(SW.first, SW.second, rotate_about(O, V[NW], phiW));
          place(SE.first, SE.second, rotate_about(O, V[NE], -phiE));
        } else if (hasSW && hasNW) {
          const Point O = center_from_chord(V[NW], V[SW], phiW);
          place(SE.first, SE.second, rotate_about(O, V[SW], phiS));
          place(NE.first, NE.second, rotate_about(O, V[NW], -phiN));
        } else if (hasSE && hasNE) {
          const Point O = center_from_chord(V[SE], V[NE], phiE);
          place(SW.first, SW.second, rotate_about(O, V[SE], -phiS));
          place(NW.first, NW.second, rotate_about(O, V[NE], phiN));
        } else {
          continue;
        }
        done[fy * m + fx] = true;
        --remaining;
        progress = true;
      }
    }
    if (!progress)
      throw DegenerateGeometry("reconstruct: sweep stalled (disconnected patch)");
  }

  const Vec2 u = V[{m, 0}] - V[{0, 0}];
  const Vec2 v = V[{s, n}] - V[{0, 0}];

  // Boundary closure implied by the monodromy/parallelism conditions.
  double closure = 0;
  for (int y = 0; y <= n; ++y)
    closure = std::max(closure, dist(V[{m, y}], V[{0, y}] + u));
  for (int x = 0; x + s <= m; ++x)
    closure = std::max(closure, dist(V[{x + s, n}], V[{x, 0}] + v));

  double scale = 0;
  for (const auto& [k, pt] : V) scale = std::max(scale, pt.norm());
  scale = std::max(scale, 1.0);
  if (std::max(mismatch, closure) > 1e-6 * scale) {
    std::ostringstream os;
    os << "reconstruct: boundary fails to close (mismatch " << mismatch
       << ", closure " << closure << ")";
    throw ConditionViolation(os.str());
  }

  std::vector<Point> verts(static_cast<std::size_t>(m) * n);
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < m; ++x) verts[y * m + x] = V[{x, y}];
  TorusPattern out(m, n, s, std::move(verts), u, v);
  const ValidationReport val = validate(out);
  if (!val.pass)
    throw DegenerateGeometry("reconstruct: collapsed pattern: " + val.summary());
  return out;
}

std::pair<std::complex<double>, std::complex<double>> lemma52_solve(
    std::span<const double> c, std::span<const double> d, int p) {
  if (c.size() != d.size())
    throw InvalidParameters("lemma52_solve: c and d must have equal length");
  if (p != 0 && p != 1) throw InvalidParameters("lemma52_solve: p must be 0 or 1");
  for (double a : c)
    if (a <= 0 || a >= kTau)
      throw InvalidParameters("lemma52_solve: angles must lie in (0, 2pi)");
  for (double a : d)
    if (a <= 0 || a >= kTau)
      throw InvalidParameters("lemma52_solve: angles must lie in (0, 2pi)");

  using C = std::complex<double>;
  C prod_1mCinv{1, 0}, prod_Cm1{1, 0}, prod_1mDinv{1, 0}, prod_Dm1{1, 0};
  for (double a : c) {
    const C z = cis(a);
    prod_1mCinv *= 1.0 - 1.0 / z;
    prod_Cm1 *= z - 1.0;
  }
  for (double a : d) {
    const C z = cis(a);
    prod_1mDinv *= 1.0 - 1.0 / z;
    prod_Dm1 *= z - 1.0;
  }
  const double sgn = (p == 0) ? 1.0 : -1.0;
  const double floor_mag = 1e-14;
  if (std::abs(prod_Cm1) < floor_mag || std::abs(prod_Dm1) < floor_mag ||
      std::abs(prod_1mCinv) < floor_mag || std::abs(prod_1mDinv) < floor_mag)
    throw SingularConfiguration("lemma52_solve: vanishing product");

  const C c0_num = sgn + prod_1mDinv / prod_Cm1;
  const C c0_den = sgn + prod_Dm1 / prod_1mCinv;
  const C d0_num = sgn + prod_1mCinv / prod_Dm1;
  const C d0_den = sgn + prod_Cm1 / prod_1mDinv;
  if (std::abs(c0_den) < floor_mag || std::abs(d0_den) < floor_mag)
    throw SingularConfiguration("lemma52_solve: vanishing denominator");
  return {c0_num / c0_den, d0_num / d0_den};
}

namespace {

constexpr int kDirOffsets[4][2] = {{0, 1}, {-1, 0}, {0, -1}, {1, 0}};  // N W S E

struct FaceVars {
  std::complex<double> X[4];
  std::complex<double> Y[4];
};

FaceVars load_face(const XField& x, int fx, int fy) {
  FaceVars fv;
  for (int d = 0; d < 4; ++d) {
    fv.X[d] = x.at(fx, fy, Dir(d));
    fv.Y[d] = x.at(fx + kDirOffsets[d][0], fy + kDirOffsets[d][1],
                   facing(Dir(d)));
  }
  return fv;
}

std::complex<double> checked_div(std::complex<double> num,
                                 std::complex<double> den, const char* who) {
  if (std::abs(den) < 1e-14 * std::max(1.0, std::abs(num)))
    throw SingularConfiguration(std::string(who) + ": vanishing denominator");
  return num / den;
}

}  // namespace

XField recurrence_step(const XField& x, Color color) {
  using C = std::complex<double>;
  const int m = x.m(), n = x.n();
  const bool mut_black = (color == Color::black);
  XField out = x;

  auto inv = [](C z) { return 1.0 / z; };

  // Phase 1: the facing variable of every neighbor of a mutating face, from
  // pre-step values only.
  std::vector<std::array<C, 4>> yprime(static_cast<std::size_t>(m) * n);
  for (int fy = 0; fy < n; ++fy) {
    for (int fx = 0; fx < m; ++fx) {
      if ((FaceId{fx, fy}.black()) != mut_black) continue;
      const FaceVars fv = load_face(x, fx, fy);
      for (int d = 0; d < 4; ++d) {
        const Dir D = Dir(d);
        auto side_factor = [&](Dir sd) {
          const C a = (1.0 - inv(fv.X[int(sd)])) * (1.0 - inv(fv.Y[d]));
          const C b = (1.0 - fv.Y[int(sd)]) * (1.0 - fv.X[d]);
          const C e = (1.0 - fv.X[int(sd)]) * (1.0 - fv.Y[d]);
          const C g = (1.0 - inv(fv.Y[int(sd)])) * (1.0 - inv(fv.X[d]));
          const C num = 1.0 - checked_div(a, b, "recurrence_step");
          const C den = 1.0 - checked_div(e, g, "recurrence_step");
          return checked_div(num, den, "recurrence_step");
        };
        yprime[fy * m + fx][d] =
            fv.Y[d] * side_factor(rot_ccw(D)) * side_factor(rot_cw(D));
      }
    }
  }
  for (int fy = 0; fy < n; ++fy)
    for (int fx = 0; fx < m; ++fx) {
      if ((FaceId{fx, fy}.black()) != mut_black) continue;
      for (int d = 0; d < 4; ++d)
        out.at(fx + kDirOffsets[d][0], fy + kDirOffsets[d][1], facing(Dir(d))) =
            yprime[fy * m + fx][d];
    }

  // Phase 2: the mutating faces' own variables, consuming the new facing
  // values computed above.
  for (int fy = 0; fy < n; ++fy) {
    for (int fx = 0; fx < m; ++fx) {
      if ((FaceId{fx, fy}.black()) != mut_black) continue;
      const FaceVars fv = load_face(x, fx, fy);
      const auto& yp = yprime[fy * m + fx];
      for (int d = 0; d < 4; ++d) {
        const int sd = int(rot_ccw(Dir(d)));
        const C num_frac =
            (1.0 - inv(fv.X[d])) * (1.0 - inv(fv.Y[sd])) * (1.0 - inv(yp[d]));
        const C num_base = (1.0 - fv.Y[d]) * (1.0 - fv.X[sd]) * (1.0 - yp[sd]);
        const C den_frac = (1.0 - fv.X[d]) * (1.0 - fv.Y[sd]) * (1.0 - yp[d]);
        const C den_base =
            (1.0 - inv(fv.Y[d])) * (1.0 - inv(fv.X[sd])) * (1.0 - inv(yp[sd]));
        const C num = 1.0 - checked_div(num_frac, num_base, "recurrence_step");
        const C den = 1.0 - checked_div(den_frac, den_base, "recurrence_step");
        out.at(fx, fy, Dir(d)) = checked_div(num, den, "recurrence_step");
      }
    }
  }

  // The formulas preserve unit modulus; renormalize the roundoff away.
  for (int fy = 0; fy < n; ++fy)
    for (int fx = 0; fx < m; ++fx)
      for (int d = 0; d < 4; ++d) {
        C& z = out.at(fx, fy, Dir(d));
        const double mod = std::abs(z);
        if (std::abs(mod - 1.0) > 1e-9)
          throw SingularConfiguration("recurrence_step: lost unit modulus");
        z /= mod;
      }
  return out;
}

double radius_ratio(const PhiField& f, FaceId from, FaceId to) {
  const int dx = to.fx - from.fx, dy = to.fy - from.fy;
  const auto sin_half = [&](FaceId g, Dir d) {
    return std::sin(f.at(g.fx, g.fy, d) / 2.0);
  };
  if (dx == 1 && dy == 0) return sin_half(from, Dir::E) / sin_half(to, Dir::W);
  if (dx == -1 && dy == 0) return sin_half(from, Dir::W) / sin_half(to, Dir::E);
  if (dx == 0 && dy == 1) return sin_half(from, Dir::N) / sin_half(to, Dir::S);
  if (dx == 0 && dy == -1) return sin_half(from, Dir::S) / sin_half(to, Dir::N);
  throw InvalidParameters("radius_ratio: faces are not adjacent");
}

}  // namespace miquel
