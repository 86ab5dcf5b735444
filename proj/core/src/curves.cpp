#include "pillowfloer/curves.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/maslov.hpp"

namespace pillowfloer {

Vec2 LiftedCurve::point(double u) const {
  const int m = edge_count();
  if (kind == CurveKind::Arc) {
    u = std::clamp(u, 0.0, static_cast<double>(m));
    const int i = std::min(static_cast<int>(std::floor(u)), m - 1);
    const double f = u - i;
    return vertices[i] * (1 - f) + vertices[i + 1] * f;
  }
  const double per = period();
  const long k = static_cast<long>(std::floor(u / per));
  const double u0 = u - k * per;
  const int i = std::min(static_cast<int>(std::floor(u0)), m - 1);
  const double f = u0 - i;
  const Vec2 base = vertices[i] * (1 - f) + vertices[i + 1] * f;
  return closure.pow(k).apply(base);
}

Vec2 LiftedCurve::direction(double u) const {
  const int m = edge_count();
  if (kind == CurveKind::Arc) {
    u = std::clamp(u, 0.0, static_cast<double>(m) - 1e-12);
    const int i = std::min(static_cast<int>(std::floor(u)), m - 1);
    return vertices[i + 1] - vertices[i];
  }
  const double per = period();
  const long k = static_cast<long>(std::floor(u / per));
  const double u0 = u - k * per;
  const int i = std::min(static_cast<int>(std::floor(u0)), m - 1);
  const Vec2 d = vertices[i + 1] - vertices[i];
  return closure.pow(k).sigma == 1 ? d : -d;
}

DeckElement LiftedCurve::period_deck(double u) const {
  if (kind == CurveKind::Arc) return DeckElement::identity();
  return closure.pow(static_cast<long>(std::floor(u / period())));
}

std::vector<Vec2> LiftedCurve::subpath(double u0, double u1) const {
  std::vector<Vec2> pts;
  pts.push_back(point(u0));
  if (u0 < u1) {
    for (long i = static_cast<long>(std::floor(u0)) + 1; i < u1; ++i) {
      Vec2 p = point(static_cast<double>(i));
      if (dist(p, pts.back()) > 1e-12) pts.push_back(p);
    }
  } else {
    for (long i = static_cast<long>(std::ceil(u0)) - 1; i > u1; --i) {
      Vec2 p = point(static_cast<double>(i));
      if (dist(p, pts.back()) > 1e-12) pts.push_back(p);
    }
  }
  Vec2 last = point(u1);
  if (dist(last, pts.back()) > 1e-12) pts.push_back(last);
  return pts;
}

void LiftedCurve::validate(double tol) const {
  if (vertices.size() < 2) throw InvalidSpec("curve needs at least two vertices");
  for (size_t i = 0; i + 1 < vertices.size(); ++i)
    if (dist(vertices[i], vertices[i + 1]) < tol)
      throw InvalidSpec("consecutive vertices coincide");
  for (size_t i = 0; i + 2 < vertices.size(); ++i) {
    const Vec2 d1 = vertices[i + 1] - vertices[i];
    const Vec2 d2 = vertices[i + 2] - vertices[i + 1];
    const double turn = std::atan2(cross(d1, d2), dot(d1, d2));
    if (std::abs(turn) >= kPi / 2)
      throw NonGenericVertex("edge-direction change >= pi/2");
  }
  if (kind == CurveKind::Circle) {
    if (dist(vertices.back(), closure.apply(vertices.front())) > 1e-6)
      throw InvalidSpec("circle closure does not match last vertex");
    for (const auto& v : vertices)
      if (lattice_distance(v) < tol) throw InvalidSpec("circle vertex at lattice point");
  } else {
    if (lattice_distance(vertices.front()) > tol || lattice_distance(vertices.back()) > tol)
      throw InvalidSpec("arc endpoints must be corner lifts");
    for (size_t i = 1; i + 1 < vertices.size(); ++i)
      if (lattice_distance(vertices[i]) < tol)
        throw InvalidSpec("arc interior vertex at lattice point");
  }
}

LiftedCurve make_circle(std::vector<Vec2> vertices, DeckElement closure, std::string label) {
  LiftedCurve c;
  c.kind = CurveKind::Circle;
  c.vertices = std::move(vertices);
  c.closure = closure;
  c.label = std::move(label);
  return c;
}

LiftedCurve make_arc(std::vector<Vec2> vertices, std::string label) {
  LiftedCurve c;
  c.kind = CurveKind::Arc;
  c.vertices = std::move(vertices);
  c.label = std::move(label);
  const Vec2 d0 = c.vertices[1] - c.vertices[0];
  const Vec2 d1 = c.vertices[c.vertices.size() - 1] - c.vertices[c.vertices.size() - 2];
  c.limiting_slopes = {d0.y / d0.x, d1.y / d1.x};
  return c;
}

LiftedCurve figure_eight(double eps, const PerturbationFunction& g, int samples) {
  if (eps <= 0) throw BadEpsilon("figure_eight requires eps > 0");
  if (samples < 64) throw InvalidSpec("figure_eight requires samples >= 64");

  std::vector<double> ts;
  ts.reserve(samples + 32);
  for (int k = 0; k < samples; ++k) ts.push_back(kTwoPi * k / samples);
  // refine near the slope-1 tangencies t = pi/2, 3pi/2
  const double base = kTwoPi / samples;
  for (double c : {kPi / 2, 3 * kPi / 2})
    for (int j = 1; j <= 6; ++j) {
      ts.push_back(c + base * j / 7.0);
      ts.push_back(c - base * j / 7.0);
    }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end(),
                       [](double a, double b) { return std::abs(a - b) < 1e-12; }),
           ts.end());

  std::vector<Vec2> v;
  v.reserve(ts.size() + 1);
  for (double t : ts) {
    const double gamma = t + eps * std::sin(t) + kPi / 2;
    v.push_back({gamma, t - eps * std::sin(t) + kPi / 2 + g(gamma)});
  }
  const DeckElement closure{1, 1, 1};
  v.push_back(closure.apply(v.front()));
  auto c = make_circle(std::move(v), closure, "L0");
  return c;
}

LiftedCurve apply_isotopy_cg(const LiftedCurve& c, const PerturbationFunction& g, double s) {
  LiftedCurve r = c;
  for (auto& v : r.vertices) v = apply_isotopy_cg(v, g, s);
  return r;
}

LiftedCurve apply_shear(const LiftedCurve& c, const PerturbationFunction& f) {
  LiftedCurve r = c;
  for (auto& v : r.vertices) v = apply_shear(v, f);
  return r;
}

LiftedCurve apply_pq_shear(const LiftedCurve& c, long p, long q, const PerturbationFunction& phi) {
  LiftedCurve r = c;
  for (auto& v : r.vertices) v = apply_pq_shear(v, p, q, phi);
  return r;
}

// ---------------------------------------------------------------------------
// crossing extraction

namespace {

struct RawHit {
  double s0, s1;  // edge-unit parameters on the two polylines
  Vec2 pos;
};

using ProbeFn = std::function<Vec2(double)>;

// Side of x relative to the local chain (before -> at -> after), as the sign
// of the larger-magnitude cross product.
int chain_side(const Vec2& before, const Vec2& at, const Vec2& after, const Vec2& x) {
  const double c1 = cross(at - before, x - before);
  const double c2 = cross(after - at, x - at);
  return (std::abs(c1) > std::abs(c2) ? c1 : c2) > 0 ? 1 : -1;
}

// All transverse crossings of two polylines, with exact-vertex coincidences
// resolved by local straddling.  Tangential touches and collinear overlaps
// throw NonTransverse.  Probe functions evaluate the curves slightly outside
// the stored range (periodic extension for circle lifts).
std::vector<RawHit> polyline_crossings(const std::vector<Vec2>& A, const std::vector<Vec2>& B,
                                       double tol, double angle_threshold,
                                       const ProbeFn& probeA, const ProbeFn& probeB,
                                       bool same_curve = false, int adjacency_period = -1) {
  std::vector<RawHit> raw;
  const int ma = static_cast<int>(A.size()) - 1;
  const int mb = static_cast<int>(B.size()) - 1;

  // uniform grid over B segments for pruning
  BBox bb = bbox_of(B);
  const double cell = std::max({bb.hi.x - bb.lo.x, bb.hi.y - bb.lo.y, 1e-9}) / 64.0;
  const int gw = 66;
  std::vector<std::vector<int>> grid(gw * gw);
  auto cell_of = [&](const Vec2& p, int* cx, int* cy) {
    *cx = std::clamp(static_cast<int>((p.x - bb.lo.x) / cell), 0, gw - 1);
    *cy = std::clamp(static_cast<int>((p.y - bb.lo.y) / cell), 0, gw - 1);
  };
  for (int j = 0; j < mb; ++j) {
    int x0, y0, x1, y1;
    cell_of(B[j], &x0, &y0);
    cell_of(B[j + 1], &x1, &y1);
    for (int x = std::min(x0, x1); x <= std::max(x0, x1); ++x)
      for (int y = std::min(y0, y1); y <= std::max(y0, y1); ++y)
        grid[x * gw + y].push_back(j);
  }

  std::vector<int> cand;
  for (int i = 0; i < ma; ++i) {
    cand.clear();
    int x0, y0, x1, y1;
    cell_of(A[i], &x0, &y0);
    cell_of(A[i + 1], &x1, &y1);
    for (int x = std::max(0, std::min(x0, x1) - 1); x <= std::min(gw - 1, std::max(x0, x1) + 1); ++x)
      for (int y = std::max(0, std::min(y0, y1) - 1); y <= std::min(gw - 1, std::max(y0, y1) + 1); ++y)
        for (int j : grid[x * gw + y]) cand.push_back(j);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    for (int j : cand) {
      if (same_curve) {
        if (j <= i + 1 && i <= j + 1) continue;  // identical or adjacent edges
        if (adjacency_period > 0) {
          // period seam: edge 0 and edge m-1 are adjacent through the closure
          if ((i == 0 && j == adjacency_period - 1) || (j == 0 && i == adjacency_period - 1))
            continue;
        }
        if (j < i) continue;  // unordered pairs once
      }
      auto h = segment_hit(A[i], A[i + 1], B[j], B[j + 1], tol);
      if (!h) continue;
      if (h->degenerate) throw NonTransverse("collinear segment overlap");
      raw.push_back({i + h->t, j + h->u, A[i] * (1 - h->t) + A[i + 1] * h->t});
    }
  }

  // cluster raw hits that describe the same geometric crossing (vertex hits
  // are reported by up to four edge pairs)
  std::sort(raw.begin(), raw.end(), [](const RawHit& a, const RawHit& b) {
    if (a.s0 != b.s0) return a.s0 < b.s0;
    return a.s1 < b.s1;
  });
  std::vector<RawHit> merged;
  const double ptol = 1e-7;
  for (const auto& r : raw) {
    bool dup = false;
    for (auto& m : merged) {
      if (std::abs(m.s0 - r.s0) < 0.5 + ptol && std::abs(m.s1 - r.s1) < 0.5 + ptol &&
          dist(m.pos, r.pos) < 10 * tol) {
        dup = true;
        break;
      }
    }
    if (!dup) merged.push_back(r);
  }

  // validate each crossing by local straddling; tangential touch is an error
  std::vector<RawHit> out;
  for (const auto& r : merged) {
    const double h = 0.25;
    const Vec2 ab = probeA(r.s0 - h), ap = probeA(r.s0), aa = probeA(r.s0 + h);
    const Vec2 bb2 = probeB(r.s1 - h), bp = probeB(r.s1), ba = probeB(r.s1 + h);
    (void)ap;
    (void)bp;
    // the same strand meeting itself across a period seam is not a crossing
    if ((dist(ab, bb2) < 1e-9 && dist(aa, ba) < 1e-9) ||
        (dist(ab, ba) < 1e-9 && dist(aa, bb2) < 1e-9))
      continue;
    const int s_before = chain_side(bb2, bp, ba, ab);
    const int s_after = chain_side(bb2, bp, ba, aa);
    if (s_before == s_after) throw NonTransverse("tangential touch between curves");
    // crossing angle between the local directions
    const Vec2 da = aa - ab, db = ba - bb2;
    double ang = std::abs(std::atan2(cross(da, db), dot(da, db)));
    ang = std::min(ang, kPi - ang);
    if (ang < angle_threshold) {
      std::ostringstream os;
      os << "crossing angle " << ang << " below threshold at s0=" << r.s0 << " s1=" << r.s1;
      throw NonTransverse(os.str());
    }
    out.push_back(r);
  }
  return out;
}

std::vector<DeckElement> window_translates(const BBox& win, const BBox& curve_bb,
                                           int max_translates) {
  std::vector<DeckElement> out;
  for (int sigma : {1, -1}) {
    BBox b = curve_bb;
    if (sigma == -1) b = BBox{-curve_bb.hi, -curve_bb.lo};
    const long m0 = static_cast<long>(std::floor((win.lo.x - b.hi.x) / kTwoPi));
    const long m1 = static_cast<long>(std::ceil((win.hi.x - b.lo.x) / kTwoPi));
    const long n0 = static_cast<long>(std::floor((win.lo.y - b.hi.y) / kTwoPi));
    const long n1 = static_cast<long>(std::ceil((win.hi.y - b.lo.y) / kTwoPi));
    for (long m = m0; m <= m1; ++m)
      for (long n = n0; n <= n1; ++n) out.push_back({m, n, sigma});
  }
  if (static_cast<int>(out.size()) > max_translates)
    throw WindowTooSmall("translate budget exhausted; enlarge window or curve is degenerate");
  return out;
}

std::vector<Vec2> transform(const std::vector<Vec2>& pts, const DeckElement& g) {
  std::vector<Vec2> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(g.apply(p));
  return out;
}

}  // namespace

std::vector<IntersectionPoint> intersections(const LiftedCurve& c0, const LiftedCurve& c1,
                                             const IntersectionOptions& opt) {
  const std::vector<Vec2>& A = c0.vertices;
  BBox win = bbox_of(A);
  win.pad(kTwoPi * opt.window_periods);
  const BBox b1 = bbox_of(c1.vertices);

  const ProbeFn probe0 = [&c0](double u) { return c0.point(u); };

  std::vector<IntersectionPoint> out;
  for (const auto& g : window_translates(win, b1, opt.max_translates)) {
    const std::vector<Vec2> T = transform(c1.vertices, g);
    BBox tb = bbox_of(T);
    tb.pad(opt.tol);
    if (!tb.overlaps(bbox_of(A))) continue;
    const ProbeFn probe1 = [&c1, g](double u) { return g.apply(c1.point(u)); };
    for (const auto& r : polyline_crossings(A, T, opt.tol, opt.angle_threshold, probe0, probe1)) {
      // dedup: circles cover one period on each side
      double s0 = r.s0, s1 = r.s1;
      if (c0.kind == CurveKind::Circle && s0 >= c0.period()) continue;
      IntersectionPoint ip;
      ip.s0 = s0;
      ip.s1 = s1;
      ip.lift_offset = g;
      ip.lift = r.pos;
      ip.point = canonicalize(LiftPoint(r.pos)).point;
      const Vec2 d0 = c0.direction(s0);
      Vec2 d1 = c1.direction(s1);
      if (g.sigma == -1) d1 = -d1;
      double ang = std::abs(std::atan2(cross(d0, d1), dot(d0, d1)));
      ip.angle = std::min(ang, kPi - ang);
      out.push_back(ip);
    }
  }
  std::sort(out.begin(), out.end(), [](const IntersectionPoint& a, const IntersectionPoint& b) {
    if (a.s0 != b.s0) return a.s0 < b.s0;
    return a.s1 < b.s1;
  });
  // drop duplicates from translate-boundary double hits
  std::vector<IntersectionPoint> dedup;
  for (const auto& p : out) {
    if (!dedup.empty() && std::abs(dedup.back().s0 - p.s0) < 1e-7 &&
        std::abs(dedup.back().s1 - p.s1) < 1e-7)
      continue;
    dedup.push_back(p);
  }
  return dedup;
}

std::vector<SelfIntersection> self_intersections(const LiftedCurve& c,
                                                 const IntersectionOptions& opt) {
  const std::vector<Vec2>& A = c.vertices;
  std::vector<SelfIntersection> out;
  const ProbeFn probe = [&c](double u) { return c.point(u); };

  // base lift against itself
  for (const auto& r :
       polyline_crossings(A, A, opt.tol, opt.angle_threshold, probe, probe,
                          /*same_curve=*/true,
                          c.kind == CurveKind::Circle ? c.edge_count() : -1)) {
    out.push_back({std::min(r.s0, r.s1), std::max(r.s0, r.s1), r.pos, DeckElement::identity()});
  }

  // base lift against nontrivial deck translates
  BBox win = bbox_of(A);
  win.pad(opt.tol);
  const BBox b = bbox_of(A);
  for (const auto& g : window_translates(win, b, opt.max_translates)) {
    if (g.is_identity()) continue;
    const std::vector<Vec2> T = transform(A, g);
    BBox tb = bbox_of(T);
    if (!tb.overlaps(win)) continue;
    const ProbeFn probeT = [&c, g](double u) { return g.apply(c.point(u)); };
    const auto hits = polyline_crossings(A, T, opt.tol, opt.angle_threshold, probe, probeT);
    for (const auto& r : hits) {
      double a = r.s0, bparam = r.s1;
      if (c.kind == CurveKind::Circle) {
        // canonicalize the unordered domain pair mod the period
        const double per = c.period();
        a = wrap(a, per);
        bparam = wrap(bparam, per);
      }
      if (a > bparam) std::swap(a, bparam);
      // deck element relating the canonical strand lifts
      DeckElement rel = DeckElement::identity();
      {
        const Vec2 pa = c.point(a), pb = c.point(bparam);
        bool found = false;
        for (int sg : {1, -1}) {
          const double mm = (pa.x - sg * pb.x) / kTwoPi;
          const double nn = (pa.y - sg * pb.y) / kTwoPi;
          if (std::abs(mm - std::round(mm)) < 1e-6 && std::abs(nn - std::round(nn)) < 1e-6) {
            rel = DeckElement{std::lround(mm), std::lround(nn), sg};
            found = true;
            break;
          }
        }
        if (!found) continue;  // numerical mismatch; skip
      }
      SelfIntersection si{a, bparam, c.point(a), rel};
      bool dup = false;
      for (const auto& o : out)
        if (std::abs(o.s0 - si.s0) < 1e-7 && std::abs(o.s1 - si.s1) < 1e-7) dup = true;
      if (!dup) out.push_back(si);
    }
  }
  std::sort(out.begin(), out.end(), [](const SelfIntersection& a, const SelfIntersection& b) {
    if (a.s0 != b.s0) return a.s0 < b.s0;
    return a.s1 < b.s1;
  });
  return out;
}

// ---------------------------------------------------------------------------
// unobstructedness / restrictedness

LiftedLoop circle_loop(const LiftedCurve& c) {
  LiftedLoop l;
  l.points = c.vertices;
  l.closure = c.closure;
  return l;
}

namespace {

// Arcs are tested away from their corner endpoints (the paper's truncation to
// P_delta): the tail and its fold image are tangent at the corner, which
// would otherwise produce spurious sub-threshold crossings.
LiftedCurve truncate_arc(const LiftedCurve& c, double delta) {
  LiftedCurve t = c;
  std::vector<Vec2> keep;
  for (const auto& v : c.vertices)
    if (dist(v, c.vertices.front()) > delta && dist(v, c.vertices.back()) > delta)
      keep.push_back(v);
  if (keep.size() >= 2) t.vertices = std::move(keep);
  return t;
}

}  // namespace

UnobstructedReport check_unobstructed(const LiftedCurve& c, const IntersectionOptions& opt) {
  UnobstructedReport rep;
  const LiftedCurve* curve = &c;
  LiftedCurve truncated;
  if (c.kind == CurveKind::Arc) {
    truncated = truncate_arc(c, 0.15);
    curve = &truncated;
  }
  const auto selfx = self_intersections(*curve, opt);
  for (const auto& si : selfx) {
    // subloop from s0 to s1: lift starts on the base lift at s0's strand; the
    // loop closes iff the deck offset between the strands is trivial
    if (!si.offset.is_identity()) continue;
    LiftedLoop sub;
    sub.points = curve->subpath(si.s0, si.s1);
    sub.closure = DeckElement::identity();
    // force exact closure at the crossing point
    sub.points.front() = si.lift;
    sub.points.back() = si.lift;
    bool all_zero = true;
    try {
      for (const auto& [pt, w] : winding_numbers(sub, opt.tol))
        if (w != 0) all_zero = false;
    } catch (const NonClosedLoop&) {
      all_zero = false;
    }
    if (all_zero) {
      rep.ok = false;
      rep.fishtails.push_back({si.s0, si.s1});
    }
  }
  if (c.kind == CurveKind::Circle) {
    bool essential = !c.closure.is_identity();
    if (!essential) {
      LiftedLoop l = circle_loop(c);
      for (const auto& [pt, w] : winding_numbers(l, opt.tol))
        if (w != 0) essential = true;
    }
    rep.essential = essential;
    if (!essential) rep.ok = false;
  }
  return rep;
}

int circle_maslov(const LiftedCurve& c) {
  if (c.kind != CurveKind::Circle) throw InvalidSpec("circle_maslov needs a circle");
  // accumulated direction angle over one period; closure preserves the line
  std::vector<Vec2> dirs;
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i) dirs.push_back(c.vertices[i + 1] - c.vertices[i]);
  double phi = std::atan2(dirs[0].y, dirs[0].x);
  const double phi0 = phi;
  for (size_t i = 1; i < dirs.size(); ++i) {
    const double turn =
        std::atan2(cross(dirs[i - 1], dirs[i]), dot(dirs[i - 1], dirs[i]));
    if (std::abs(turn) >= kPi / 2) throw NonGenericVertex("turn >= pi/2 in circle_maslov");
    phi += turn;
  }
  // closing turn back to the start direction (mod pi)
  double target = phi0;
  double diff = std::remainder(target - phi, kPi);
  phi += diff;
  const double total = phi - phi0;
  const long m = std::lround(total / kPi);
  return static_cast<int>(m);
}

RestrictedReport check_restricted(const LiftedCurve& c, const IntersectionOptions& opt) {
  RestrictedReport rep;
  const auto un = check_unobstructed(c, opt);
  rep.unobstructed = un.ok;
  if (!un.ok) {
    rep.ok = false;
    rep.detail = "curve is obstructed";
    return rep;
  }
  if (c.kind == CurveKind::Circle) {
    rep.mu = circle_maslov(c);
    rep.z = z_of_loop_jiggled(circle_loop(c), opt.tol);
    if (mod4(rep.mu + rep.z) != 0) {
      rep.ok = false;
      std::ostringstream os;
      os << "mu + z = " << rep.mu << " + " << rep.z << " != 0 mod 4";
      rep.detail = os.str();
    }
  } else {
    c.validate(opt.tol);
    // limiting slopes must be finite and recorded
    if (!c.limiting_slopes) rep.detail = "missing limiting slopes";
  }
  return rep;
}

int vertical_degree(const LiftedCurve& c) {
  if (c.kind != CurveKind::Circle) throw InvalidSpec("vertical_degree needs a circle");
  const double d = std::abs(c.vertices.back().y - c.vertices.front().y) / kTwoPi;
  const double r = std::abs(d - std::round(d));
  if (r > 1e-6) throw NonIntegralDegree("theta shift over one period is not integral");
  return static_cast<int>(std::lround(d));
}

bool is_vertically_monotonic(const LiftedCurve& c) {
  if (c.kind != CurveKind::Circle) return false;
  double lo = 1e300, hi = -1e300;
  for (size_t i = 0; i + 1 < c.vertices.size(); ++i) {
    const Vec2 d = c.vertices[i + 1] - c.vertices[i];
    if (std::abs(d.y) <= std::abs(d.x)) return false;
    lo = std::min({lo, c.vertices[i].x, c.vertices[i + 1].x});
    hi = std::max({hi, c.vertices[i].x, c.vertices[i + 1].x});
  }
  const long strip = static_cast<long>(std::floor(lo / kPi));
  return hi < (strip + 1) * kPi && lo > strip * kPi;
}

}  // namespace pillowfloer
