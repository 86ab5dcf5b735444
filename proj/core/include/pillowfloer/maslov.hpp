#pragma once

// Maslov indices of PL paths relative to constant-slope line fields, the
// triple index, the n-gon Maslov index, and the relative Z/4 grading.

#include <map>
#include <string>
#include <vector>

#include "pillowfloer/curves.hpp"

namespace pillowfloer {

// A tangent line: angle mod pi, normalized to [0, pi).
struct LineSlope {
  double angle = 0.0;

  LineSlope() = default;
  explicit LineSlope(double a) : angle(wrap(a, kPi)) {}
  static LineSlope of_direction(const Vec2& d) { return LineSlope(std::atan2(d.y, d.x)); }
  static LineSlope slope_one() { return LineSlope(kPi / 4); }
  static LineSlope horizontal() { return LineSlope(0.0); }
  static LineSlope vertical() { return LineSlope(kPi / 2); }
};

// Tie-break nudge for endpoint directions lying exactly on the reference line
// (the paper's delta > 0 convention).
inline constexpr double kMaslovDelta = 1e-7;

// Maslov index of a PL path: signed count of passes of the edge direction
// (mod pi) through ell along the vertex turnings.  Throws NonGenericVertex on
// turns >= pi/2.
int path_maslov(const std::vector<Vec2>& path, LineSlope ell = LineSlope::slope_one());

// Path on a curve between edge-unit parameters (extended lift for circles).
int path_maslov(const LiftedCurve& c, double s_from, double s_to,
                LineSlope ell = LineSlope::slope_one());

// 1 iff the shortest clockwise rotation from ell0 to ell1 passes through ell.
// Throws EqualLines when ell0 == ell1 within tolerance.
int triple_index(LineSlope ell0, LineSlope ell1, LineSlope ell);

// Maslov index of an n-gon given by chained boundary paths (clockwise
// labelling): Mas = 1 - sum_k [ mu(path_k) + tau(L_k, L_{k-1}) at the corner
// starting path_k ].  Paths must chain up within tol (ChainMismatch).
int mas_ngon(const std::vector<std::vector<Vec2>>& paths,
             LineSlope ell = LineSlope::slope_one(), double tol = 1e-7);

// Relative Z/4 grading of two intersection points on the same L1 component:
//   gr(p,q) = mu(L0)_{a0} + mu(L1)_{a1} + tau(L0,L1)_p - tau(L0,L1)_q
//             + z(L0(a0) * L1(a1))   (mod 4)
// with a0 in L0 from p to q and a1 in L1 from q to p, chosen as shortest
// parameter paths.
int relative_grading(const IntersectionPoint& p, const IntersectionPoint& q,
                     const LiftedCurve& L0, const LiftedCurve& L1);

// Same, but with explicitly chosen connecting parameter paths; used by the
// complementary-path invariance check.
int relative_grading_paths(const IntersectionPoint& p, const IntersectionPoint& q,
                           const LiftedCurve& L0, const LiftedCurve& L1,
                           double s0_to, double s1_back);

enum class AnchorProvenance { Signature, User, None };

struct GradingAssignment {
  std::vector<int> grading;           // per-generator value in Z/4
  int anchor_generator = -1;
  int anchor_value = 0;
  AnchorProvenance provenance = AnchorProvenance::None;
};

// Shift all gradings in the assignment so `generator` sits in `value`.
GradingAssignment anchor_absolute(GradingAssignment g, int generator, int value,
                                  AnchorProvenance provenance = AnchorProvenance::User);

inline int mod4(long v) { return static_cast<int>(((v % 4) + 4) % 4); }

}  // namespace pillowfloer
