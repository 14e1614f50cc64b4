#pragma once

#include "miquel/pattern.hpp"

namespace miquel {

struct ForgeOptions {
  bool isoradial = false;   // additionally drive all circumradii to a common value
  int max_iter = 400;
  double tol = 1e-11;       // target worst relative residual
};

struct ForgeResult {
  TorusPattern pattern;
  double residual = 0.0;    // worst relative concyclicity (and radius) residual
  int iterations = 0;
};

// Projects a TorusPattern-shaped vertex cloud onto the constraint manifold by
// damped Gauss-Newton / Levenberg-Marquardt over the vertex coordinates and
// monodromy vectors. The seed's vertices S(0,0) and S(1,0) are pinned to fix
// the similarity gauge. Throws ForgeFailed when the iteration does not reach
// `tol`, ForgeDegenerate when the converged cloud fails validate().
ForgeResult forge_pattern(const TorusPattern& seed, const ForgeOptions& opt = {});

}  // namespace miquel
