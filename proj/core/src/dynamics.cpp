#include "miquel/dynamics.hpp"

#include <sstream>

namespace miquel {

TorusPattern mutate(const TorusPattern& p, Color color, const MutateOptions& opt) {
  const int m = p.m(), n = p.n();
  const bool mutate_black = (color == Color::black);

  // Circles of every face touching the fundamental domain's vertices.
  auto circle_at = [&](int fx, int fy) {
    const auto c = p.face_corners(fx, fy);
    return circle_through(std::span<const Point, 4>(c));
  };

  std::vector<Point> out(static_cast<std::size_t>(m) * n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < m; ++x) {
      // The four faces incident to vertex (x, y); the two of the color not
      // being mutated form a diagonal pair.
      const int bases[4][2] = {{x - 1, y - 1}, {x, y - 1}, {x - 1, y}, {x, y}};
      Circle keep[2];
      int found = 0;
      for (const auto& b : bases) {
        const bool black = (((b[1] - b[0]) % 2) + 2) % 2 == 0;
        if (black != mutate_black) keep[found++] = circle_at(b[0], b[1]);
      }
      if (found != 2) throw DegenerateMutation("mutate: checkerboard bookkeeping failed");
      if (dist(keep[0].center, keep[1].center) <=
          kGeomTol * (keep[0].radius + keep[1].radius)) {
        std::ostringstream os;
        os << "mutate: coincident opposite-color centers at vertex (" << x << "," << y << ")";
        throw DegenerateMutation(os.str());
      }
      // Second intersection point of the two kept circles. A vertex on the
      // center line is a tangency point and stays exactly in place.
      const Point vtx = p.vertex(x, y);
      const Vec2 d = keep[1].center - keep[0].center;
      const double off = std::abs((vtx - keep[0].center).cross(d)) / d.norm();
      out[y * m + x] =
          off <= kGeomTol * (keep[0].radius + keep[1].radius)
              ? vtx
              : reflect_across(vtx, Line{keep[0].center, keep[1].center});
    }
  }

  TorusPattern result(m, n, p.s(), std::move(out), p.u(), p.v());
  if (opt.validate_output) {
    const ValidationReport rep = validate(result, opt.validation);
    if (!rep.pass)
      throw DegenerateMutation("mutate: output fails validation: " + rep.summary());
  }
  return result;
}

Orbit::Orbit(int t_min, int t_max, std::vector<TorusPattern> states)
    : t_min_(t_min), t_max_(t_max), states_(std::move(states)) {
  if (t_min_ > 0 || t_max_ < 0 || states_.size() != static_cast<std::size_t>(t_max_ - t_min_ + 1))
    throw InvalidParameters("Orbit: window must contain t = 0 and match the state count");
}

const TorusPattern& Orbit::at(int t) const {
  if (t < t_min_ || t > t_max_) throw InvalidParameters("Orbit::at: t outside window");
  return states_[t - t_min_];
}

Orbit evolve(const TorusPattern& p, int t_min, int t_max, const MutateOptions& opt) {
  if (t_min > 0 || t_max < 0)
    throw InvalidParameters("evolve: window must contain t = 0");
  std::vector<TorusPattern> fw, bw;
  fw.reserve(t_max + 1);
  fw.push_back(p);
  // Forward: S_{t+1} = mu_B(S_t) for even t, mu_W(S_t) for odd t.
  for (int t = 0; t < t_max; ++t) {
    try {
      fw.push_back(mutate(fw.back(), (t % 2 == 0) ? Color::black : Color::white, opt));
    } catch (const DegenerateMutation& e) {
      std::ostringstream os;
      os << "evolve: step to t = " << (t + 1) << " failed: " << e.what();
      throw DegenerateMutation(os.str());
    }
  }
  // Backward: S_{t-1} = mu_W(S_t) for even t, mu_B(S_t) for odd t.
  bw.reserve(-t_min);
  for (int t = 0; t > t_min; --t) {
    const TorusPattern& cur = bw.empty() ? p : bw.back();
    try {
      bw.push_back(mutate(cur, (((t % 2) + 2) % 2 == 0) ? Color::white : Color::black, opt));
    } catch (const DegenerateMutation& e) {
      std::ostringstream os;
      os << "evolve: step to t = " << (t - 1) << " failed: " << e.what();
      throw DegenerateMutation(os.str());
    }
  }
  std::vector<TorusPattern> states;
  states.reserve(t_max - t_min + 1);
  for (auto it = bw.rbegin(); it != bw.rend(); ++it) states.push_back(*it);
  for (auto& st : fw) states.push_back(st);
  return Orbit(t_min, t_max, std::move(states));
}

NormalizedOrbit::NormalizedOrbit(int t_min, int t_max, std::vector<TorusPattern> states)
    : t_min_(t_min), t_max_(t_max), states_(std::move(states)) {}

const TorusPattern& NormalizedOrbit::at(int t) const {
  if (t < t_min_ || t > t_max_)
    throw InvalidParameters("NormalizedOrbit::at: t outside window");
  return states_[t - t_min_];
}

NormalizedOrbit normalize(const Orbit& o) {
  const Point anchor = o.at(0).vertex(0, 0);
  std::vector<TorusPattern> states;
  states.reserve(o.t_max() - o.t_min() + 1);
  for (int t = o.t_min(); t <= o.t_max(); ++t)
    states.push_back(o.at(t).translated(anchor - o.at(t).vertex(0, 0)));
  return NormalizedOrbit(o.t_min(), o.t_max(), std::move(states));
}

std::vector<Point> relative_motion(const Orbit& o, int tracked_x, int tracked_y,
                                   int ref_x, int ref_y) {
  const TorusPattern& base = o.at(o.t_min());
  if (tracked_x < 0 || tracked_x >= base.m() || tracked_y < 0 || tracked_y >= base.n() ||
      ref_x < 0 || ref_x >= base.m() || ref_y < 0 || ref_y >= base.n())
    throw InvalidParameters("relative_motion: vertex index outside fundamental domain");
  std::vector<Point> seq;
  seq.reserve(o.t_max() - o.t_min() + 1);
  for (int t = o.t_min(); t <= o.t_max(); ++t)
    seq.push_back(o.at(t).vertex(tracked_x, tracked_y) - o.at(t).vertex(ref_x, ref_y));
  return seq;
}

}  // namespace miquel
