#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace pillowfloer {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Default absolute tolerance for lattice/corner coincidence and segment
// predicates.  Configurable per call site.
inline constexpr double kDefaultTol = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator-() const { return {-x, -y}; }
  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double dist(const Vec2& a, const Vec2& b) { return norm(a - b); }

// Reduce x into [0, m).
inline double wrap(double x, double m) {
  double r = std::fmod(x, m);
  if (r < 0) r += m;
  if (r == m) r = 0;
  return r;
}

struct BBox {
  Vec2 lo{1e300, 1e300};
  Vec2 hi{-1e300, -1e300};

  void expand(const Vec2& p) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  void pad(double d) {
    lo.x -= d;
    lo.y -= d;
    hi.x += d;
    hi.y += d;
  }
  bool overlaps(const BBox& o) const {
    return lo.x <= o.hi.x && o.lo.x <= hi.x && lo.y <= o.hi.y && o.lo.y <= hi.y;
  }
};

inline BBox bbox_of(const std::vector<Vec2>& pts) {
  BBox b;
  for (const auto& p : pts) b.expand(p);
  return b;
}

// Proper intersection of closed segments [a1,a2] and [b1,b2].  Returns the
// parameters (t,u) in [0,1]^2 when the interiors cross transversely.  Vertex
// coincidences within tol are reported via the *touch flags so callers can
// resolve them combinatorially (see polyline_crossings); collinear overlaps
// return nothing and set *degenerate.
struct SegHit {
  double t = 0, u = 0;
  bool a_vertex_touch = false;  // an endpoint of b lies on a (or vice versa)
  bool b_vertex_touch = false;
  bool degenerate = false;
};

std::optional<SegHit> segment_hit(const Vec2& a1, const Vec2& a2, const Vec2& b1,
                                  const Vec2& b2, double tol);

// Winding number of a closed polyline (first point repeated last not required;
// the closing edge last->first is implied) around p.  p must not lie on the
// polyline.
int winding_number(const std::vector<Vec2>& loop, const Vec2& p);

// Signed area (shoelace) of the closed polyline.
double signed_area(const std::vector<Vec2>& loop);

// True if the closed polyline is simple (no self crossings, no repeated
// interior touches) up to tol.
bool is_simple_loop(const std::vector<Vec2>& loop, double tol);

}  // namespace pillowfloer
