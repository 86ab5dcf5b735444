#pragma once

// Immersed circles and proper arcs in the pillowcase as lifted polylines; the
// figure-eight family L0^{eps,g}; unobstructedness, restrictedness and
// intersection computation.

#include <optional>
#include <string>
#include <vector>

#include "pillowfloer/pillowcase.hpp"

namespace pillowfloer {

enum class CurveKind { Circle, Arc };

// A lifted polyline curve.  Circles store one period, with the closing vertex
// vertices.back() == closure.apply(vertices.front()); the full lift is the
// union of closure^k translates.  Arcs store the whole arc, both endpoints at
// corner lifts.  Parameters are in edge units: u in [0, size()-1].
struct LiftedCurve {
  CurveKind kind = CurveKind::Circle;
  std::vector<Vec2> vertices;
  DeckElement closure;                      // circles only
  std::optional<std::pair<double, double>> limiting_slopes;  // arcs only
  std::string label;

  int edge_count() const { return static_cast<int>(vertices.size()) - 1; }
  double period() const { return static_cast<double>(edge_count()); }

  // Point of the extended lift at parameter u in R (circles), or u in
  // [0, edge_count()] (arcs).
  Vec2 point(double u) const;
  // Direction of the edge containing parameter u (extends periodically for
  // circles).
  Vec2 direction(double u) const;
  // Deck element relating the base period to the one containing u.
  DeckElement period_deck(double u) const;

  // Subpath of the extended lift from u0 to u1, endpoints included.
  std::vector<Vec2> subpath(double u0, double u1) const;

  // Structural invariants: consecutive vertices distinct, turns < pi/2,
  // closure matches, vertices avoid lattice points (interior only for arcs),
  // arc endpoints at corner lifts.  Throws on violation.
  void validate(double tol = kDefaultTol) const;
};

LiftedCurve make_circle(std::vector<Vec2> vertices, DeckElement closure,
                        std::string label = "");
LiftedCurve make_arc(std::vector<Vec2> vertices, std::string label = "");

// The figure-eight immersion L0^{eps,g}, sampled on [0,2pi] with `samples`
// uniform points (vertex at t=0) plus refinement near the slope-1 tangencies
// t = pi/2, 3pi/2.  Closure is the translation (1,1,+1).
LiftedCurve figure_eight(double eps, const PerturbationFunction& g, int samples = 512);

LiftedCurve apply_isotopy_cg(const LiftedCurve& c, const PerturbationFunction& g, double s);
LiftedCurve apply_shear(const LiftedCurve& c, const PerturbationFunction& f);
LiftedCurve apply_pq_shear(const LiftedCurve& c, long p, long q, const PerturbationFunction& phi);

// A transverse crossing of two curves. s0, s1 are edge-unit parameters on the
// base periods of c0 and c1; lift_offset g places the c1 lift so that the
// crossing happens between the c0 base lift and g * (c1 base lift).
struct IntersectionPoint {
  double s0 = 0;
  double s1 = 0;
  PillowPoint point;
  DeckElement lift_offset;
  double angle = 0;  // crossing angle in (0, pi/2]
  Vec2 lift;         // crossing position on the c0 base lift
};

struct IntersectionOptions {
  double tol = kDefaultTol;
  double angle_threshold = 1e-6;
  int window_periods = 1;   // padding around the c0 bbox, in 2pi units
  int max_translates = 4096;
};

// Every transverse crossing of the images in P, each reported once, sorted by
// (s0, s1).  Throws NonTransverse for sub-threshold crossing angles or
// tangential touches, WindowTooSmall if the translate budget is exhausted.
std::vector<IntersectionPoint> intersections(const LiftedCurve& c0, const LiftedCurve& c1,
                                             const IntersectionOptions& opt = {});

struct SelfIntersection {
  double s0, s1;  // s0 < s1, parameters on the base period
  Vec2 lift;      // crossing position at parameter s0's strand
  DeckElement offset;  // deck element with offset * lift(s1 strand) = lift(s0 strand)
};

std::vector<SelfIntersection> self_intersections(const LiftedCurve& c,
                                                 const IntersectionOptions& opt = {});

struct UnobstructedReport {
  bool ok = true;
  bool essential = true;                      // circles only
  std::vector<std::pair<double, double>> fishtails;  // subloop parameter ranges
};

// Fishtail detection: a self-intersection whose enclosed subloop lifts with
// identity closure and vanishing winding numbers.  Circles are additionally
// checked for essentialness.
UnobstructedReport check_unobstructed(const LiftedCurve& c,
                                      const IntersectionOptions& opt = {});

struct RestrictedReport {
  bool ok = true;
  bool unobstructed = true;
  int mu = 0;       // circles: Maslov index against ell_1
  int z = 0;        // circles: class z of the curve
  std::string detail;
};

// Circles: mu(c, ell_1) + z(c) = 0 mod 4.  Arcs: proper-immersion conditions
// and unobstructedness of the truncation.
RestrictedReport check_restricted(const LiftedCurve& c,
                                  const IntersectionOptions& opt = {});

// |theta(end) - theta(start)| / 2pi over one period, which must be within
// 1e-6 of an integer (NonIntegralDegree otherwise).
int vertical_degree(const LiftedCurve& c);

// Every edge slope has |slope| > 1 and gamma stays inside one open vertical
// strip (k pi, (k+1) pi).
bool is_vertically_monotonic(const LiftedCurve& c);

// The full-period loop of a circle as a LiftedLoop (for z / words / windings).
LiftedLoop circle_loop(const LiftedCurve& c);

// Maslov index of the full circle; for closed loops the count does not
// depend on which constant-slope line field is used.
int circle_maslov(const LiftedCurve& c);

}  // namespace pillowfloer
