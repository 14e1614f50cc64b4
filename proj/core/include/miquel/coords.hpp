#pragma once

#include <complex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "miquel/dynamics.hpp"
#include "miquel/pattern.hpp"

namespace miquel {

// The four triangular regions of a face.
enum class Dir : int { N = 0, W = 1, S = 2, E = 3 };

inline Dir facing(Dir d) { return Dir((int(d) + 2) % 4); }       // N<->S, W<->E
inline Dir rot_ccw(Dir d) { return Dir((int(d) + 1) % 4); }      // N->W->S->E->N
inline Dir rot_cw(Dir d) { return Dir((int(d) + 3) % 4); }
const char* dir_name(Dir d);

// Angles under which a face's edges are seen from its circumcenter, one value
// per (face of the fundamental domain, direction), each in (0, 2*pi).
// Lookups reduce arbitrary face coordinates through the torus periods.
class PhiField {
 public:
  PhiField(int m, int n, int s);

  int m() const { return m_; }
  int n() const { return n_; }
  int s() const { return s_; }

  double at(int fx, int fy, Dir d) const { return vals_[index(fx, fy, d)]; }
  double& at(int fx, int fy, Dir d) { return vals_[index(fx, fy, d)]; }
  double at(FaceId f, Dir d) const { return at(f.fx, f.fy, d); }

  std::size_t size() const { return vals_.size(); }

  // Largest angular distance (mod 2*pi) between corresponding entries.
  double max_angular_diff(const PhiField& o) const;

 private:
  std::size_t index(int fx, int fy, Dir d) const;
  int m_, n_, s_;
  std::vector<double> vals_;
};

// The unit-complex exponentials X = e^{i phi} on the same index set.
class XField {
 public:
  XField(int m, int n, int s);

  int m() const { return m_; }
  int n() const { return n_; }
  int s() const { return s_; }

  std::complex<double> at(int fx, int fy, Dir d) const { return vals_[index(fx, fy, d)]; }
  std::complex<double>& at(int fx, int fy, Dir d) { return vals_[index(fx, fy, d)]; }

 private:
  std::size_t index(int fx, int fy, Dir d) const;
  int m_, n_, s_;
  std::vector<std::complex<double>> vals_;
};

XField to_x(const PhiField& f);
PhiField to_phi(const XField& x);

PhiField extract_phi(const TorusPattern& p);

struct ConditionEntry {
  std::string label;     // "Eq(9)" ... "Eq(18)", or "Eq(23)"/"Eq(24)"/"Eq(25)"
  std::string detail;    // worst offending face/vertex/column
  double residual = 0.0;
  bool pass = true;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;
  bool pass = true;
  double worst = 0.0;
  const ConditionEntry* find(const std::string& label) const;
  std::string summary() const;
};

// Evaluates the full defining equation set for (m, n, s): modular equations as
// distance to the nearest admissible value, sine-product equations as log-ratio
// magnitude, and the two openness conditions as 0/1 scores. The shifted
// variants replace their unshifted counterparts exactly when s != 0.
ConditionReport check_conditions(const PhiField& f, double tol = 1e-7);

// Rebuilds the pattern face by face from an admissible field, normalized to
// S(0,0) = (0,0), S(1,0) = (1,0). Throws ConditionViolation when the field
// fails check_conditions or the reconstructed boundary does not close up;
// DegenerateGeometry when a face collapses.
TorusPattern reconstruct(const PhiField& f, double tol = 1e-7);

// Closed-form completion (C0, D0) of angle tuples constrained by the
// half-angle sum and sine-product relations; k = c.size() = d.size().
std::pair<std::complex<double>, std::complex<double>> lemma52_solve(
    std::span<const double> c, std::span<const double> d, int p);

// One mutation in X coordinates: first the facing variables of every face
// adjacent to a mutating face are updated from pre-step values, then the
// mutating faces' own variables (which consume the already-updated facing
// values). Entrywise equal to extract_phi(mutate(p, color)) on valid inputs.
XField recurrence_step(const XField& x, Color color);

// R_to / R_from for adjacent faces, from the sine half-angle formulas.
double radius_ratio(const PhiField& f, FaceId from, FaceId to);

}  // namespace miquel
