#include "pillowfloer/geom.hpp"

#include <algorithm>

namespace pillowfloer {

std::optional<SegHit> segment_hit(const Vec2& a1, const Vec2& a2, const Vec2& b1,
                                  const Vec2& b2, double tol) {
  const Vec2 da = a2 - a1, db = b2 - b1;
  const double den = cross(da, db);
  const double la = norm(da), lb = norm(db);
  if (la == 0 || lb == 0) return std::nullopt;

  if (std::abs(den) < tol * la * lb * 1e-3) {
    // (near-)parallel: degenerate only if collinear and overlapping
    const double off1 = std::abs(cross(da, b1 - a1)) / la;
    const double off2 = std::abs(cross(da, b2 - a1)) / la;
    if (off1 < tol && off2 < tol) {
      double t1 = dot(b1 - a1, da) / (la * la);
      double t2 = dot(b2 - a1, da) / (la * la);
      if (std::max(std::min(t1, t2), 0.0) < std::min(std::max(t1, t2), 1.0) - tol / la) {
        SegHit h;
        h.degenerate = true;
        return h;
      }
    }
    return std::nullopt;
  }

  const double t = cross(b1 - a1, db) / den;
  const double u = cross(b1 - a1, da) / den;
  const double ta = tol / la, tb = tol / lb;
  if (t < -ta || t > 1 + ta || u < -tb || u > 1 + tb) return std::nullopt;

  SegHit h;
  h.t = std::clamp(t, 0.0, 1.0);
  h.u = std::clamp(u, 0.0, 1.0);
  h.a_vertex_touch = (t < ta || t > 1 - ta);
  h.b_vertex_touch = (u < tb || u > 1 - tb);
  return h;
}

int winding_number(const std::vector<Vec2>& loop, const Vec2& p) {
  // accumulated-angle winding; robust for points off the polyline
  double total = 0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2 a = loop[i] - p;
    const Vec2 b = loop[(i + 1) % n] - p;
    total += std::atan2(cross(a, b), dot(a, b));
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double signed_area(const std::vector<Vec2>& loop) {
  double s = 0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = loop[i];
    const Vec2& b = loop[(i + 1) % n];
    s += cross(a, b);
  }
  return 0.5 * s;
}

bool is_simple_loop(const std::vector<Vec2>& loop, double tol) {
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a1 = loop[i];
    const Vec2& a2 = loop[(i + 1) % n];
    for (size_t j = i + 1; j < n; ++j) {
      if (j == i) continue;
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const Vec2& b1 = loop[j];
      const Vec2& b2 = loop[(j + 1) % n];
      auto h = segment_hit(a1, a2, b1, b2, tol);
      if (!h) continue;
      if (h->degenerate) return false;
      if (adjacent) {
        // shared vertex only
        const bool at_shared = (j == i + 1) ? (h->t > 1 - 1e-9 || h->u < 1e-9)
                                            : (h->t < 1e-9 || h->u > 1 - 1e-9);
        if (at_shared && (h->a_vertex_touch || h->b_vertex_touch)) continue;
      }
      return false;
    }
  }
  return true;
}

}  // namespace pillowfloer
