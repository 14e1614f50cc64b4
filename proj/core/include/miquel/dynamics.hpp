#pragma once

#include <vector>

#include "miquel/pattern.hpp"

namespace miquel {

enum class Color { black, white };

inline Color other(Color c) { return c == Color::black ? Color::white : Color::black; }

struct MutateOptions {
  bool validate_output = true;
  // Looser than the strict pattern invariant: thin faces amplify roundoff in
  // the hold-out residual, while genuine degeneracies blow past any tolerance.
  ValidateOptions validation{1e-7, kGeomTol};
};

// One Miquel mutation: every vertex moves to the second intersection point of
// its two circumcircles of the color *not* being mutated (equivalently, it is
// reflected across the line joining their centers; tangency leaves it fixed).
// All new positions are computed from the input state (simultaneous update).
// Circles of the untouched color are preserved. Throws DegenerateMutation when
// a required center pair coincides or the output fails validation.
TorusPattern mutate(const TorusPattern& p, Color color, const MutateOptions& opt = {});

// Time-indexed window of the orbit, t_min <= 0 <= t_max, with S_0 = base.
// Odd-time states are produced by black mutation, per the time convention
// S_1 = mu_B(S_0), S_2 = mu_W(S_1), and mirrored for negative times.
class Orbit {
 public:
  Orbit(int t_min, int t_max, std::vector<TorusPattern> states);

  int t_min() const { return t_min_; }
  int t_max() const { return t_max_; }
  const TorusPattern& at(int t) const;

 private:
  int t_min_, t_max_;
  std::vector<TorusPattern> states_;
};

Orbit evolve(const TorusPattern& p, int t_min, int t_max, const MutateOptions& opt = {});

// Orbit with every state translated so that S~_t(0,0) = S_0(0,0) for all t.
class NormalizedOrbit {
 public:
  NormalizedOrbit(int t_min, int t_max, std::vector<TorusPattern> states);

  int t_min() const { return t_min_; }
  int t_max() const { return t_max_; }
  const TorusPattern& at(int t) const;

 private:
  int t_min_, t_max_;
  std::vector<TorusPattern> states_;
};

NormalizedOrbit normalize(const Orbit& o);

// Per-step difference S_t(tracked) - S_t(reference) for vertices of the
// fundamental domain.
std::vector<Point> relative_motion(const Orbit& o, int tracked_x, int tracked_y,
                                   int ref_x, int ref_y);

}  // namespace miquel
