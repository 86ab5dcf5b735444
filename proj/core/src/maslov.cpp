#include "pillowfloer/maslov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pillowfloer/errors.hpp"

namespace pillowfloer {

namespace {

// Continuous lift of the direction angle along a PL path; throws on turns
// >= pi/2.
std::pair<double, double> angle_span(const std::vector<Vec2>& path) {
  if (path.size() < 2) throw ChainMismatch("empty path");
  std::vector<Vec2> dirs;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    const Vec2 d = path[i + 1] - path[i];
    if (norm(d) < 1e-14) continue;
    dirs.push_back(d);
  }
  if (dirs.empty()) throw ChainMismatch("degenerate path");
  double phi = std::atan2(dirs[0].y, dirs[0].x);
  const double phi0 = phi;
  for (size_t i = 1; i < dirs.size(); ++i) {
    const double turn = std::atan2(cross(dirs[i - 1], dirs[i]), dot(dirs[i - 1], dirs[i]));
    if (std::abs(turn) >= kPi / 2) throw NonGenericVertex("turn >= pi/2 along path");
    phi += turn;
  }
  return {phi0, phi};
}

long floor_div(double x, double m) { return static_cast<long>(std::floor(x / m)); }

}  // namespace

int path_maslov(const std::vector<Vec2>& path, LineSlope ell) {
  const auto [phi0, phi1] = angle_span(path);
  const double a = ell.angle + kMaslovDelta;
  return static_cast<int>(floor_div(phi1 - a, kPi) - floor_div(phi0 - a, kPi));
}

int path_maslov(const LiftedCurve& c, double s_from, double s_to, LineSlope ell) {
  if (std::abs(s_from - s_to) < 1e-14) return 0;
  return path_maslov(c.subpath(s_from, s_to), ell);
}

int triple_index(LineSlope ell0, LineSlope ell1, LineSlope ell) {
  const double span = wrap(ell0.angle - ell1.angle, kPi);
  if (span < 1e-12 || span > kPi - 1e-12) throw EqualLines();
  const double pos = wrap(ell0.angle - ell.angle - kMaslovDelta, kPi);
  return pos < span ? 1 : 0;
}

int mas_ngon(const std::vector<std::vector<Vec2>>& paths, LineSlope ell, double tol) {
  const size_t n = paths.size();
  if (n < 2) throw ChainMismatch("need at least two boundary paths");
  long sum = 0;
  for (size_t k = 0; k < n; ++k) {
    const auto& cur = paths[k];
    const auto& prev = paths[(k + n - 1) % n];
    if (cur.size() < 2 || prev.size() < 2) throw ChainMismatch("degenerate boundary path");
    if (dist(prev.back(), cur.front()) > tol) {
      std::ostringstream os;
      os << "paths " << (k + n - 1) % n << " -> " << k << " do not chain";
      throw ChainMismatch(os.str());
    }
    sum += path_maslov(cur, ell);
    const Vec2 d_out = cur[1] - cur[0];
    const Vec2 d_in = prev[prev.size() - 1] - prev[prev.size() - 2];
    sum += triple_index(LineSlope::of_direction(d_out), LineSlope::of_direction(d_in), ell);
  }
  return static_cast<int>(1 - sum);
}

namespace {

// Shortest parameter-path representative of `target` near `base` (circles
// identify parameters mod the period).
double nearest_param(const LiftedCurve& c, double base, double target) {
  if (c.kind == CurveKind::Arc) return target;
  const double per = c.period();
  double best = target, bestd = std::abs(target - base);
  for (long k = -2; k <= 2; ++k) {
    const double cand = target + k * per;
    if (std::abs(cand - base) < bestd) {
      bestd = std::abs(cand - base);
      best = cand;
    }
  }
  return best;
}

}  // namespace

int relative_grading_paths(const IntersectionPoint& p, const IntersectionPoint& q,
                           const LiftedCurve& L0, const LiftedCurve& L1, double s0_to,
                           double s1_back) {
  // alpha0 on L0 from p to q (parameter s0(p) -> s0_to, a lift of q's s0);
  // alpha1 on L1 from q to p (parameter s1(q)-lift -> s1_back, a lift of
  // p's s1).
  const double per1 = L1.kind == CurveKind::Circle ? L1.period() : 0;

  const std::vector<Vec2> a0 = L0.subpath(p.s0, s0_to);
  // deck element moving q's stored lift to the end of alpha0
  const long k0 = L0.kind == CurveKind::Circle
                      ? std::lround((s0_to - q.s0) / L0.period())
                      : 0;
  const DeckElement h = L0.closure.pow(k0);
  const DeckElement place_q = h.compose(q.lift_offset);

  std::vector<Vec2> a1raw = L1.subpath(q.s1, s1_back);
  std::vector<Vec2> a1;
  a1.reserve(a1raw.size());
  for (const auto& v : a1raw) a1.push_back(place_q.apply(v));

  if (dist(a0.back(), a1.front()) > 1e-6) throw ChainMismatch("grading paths do not chain at q");

  // closure element of the loop: end = G * start
  const long k1 = L1.kind == CurveKind::Circle ? std::lround((s1_back - p.s1) / per1) : 0;
  const DeckElement G =
      place_q.compose(L1.closure.pow(k1)).compose(p.lift_offset.inverse());
  if (dist(G.apply(a0.front()), a1.back()) > 1e-6)
    throw ChainMismatch("grading loop does not close");

  LiftedLoop loop;
  loop.points = a0;
  loop.points.insert(loop.points.end(), a1.begin() + 1, a1.end());
  loop.closure = G;

  const int mu0 = std::abs(p.s0 - s0_to) < 1e-14 ? 0 : path_maslov(a0, LineSlope::slope_one());
  const int mu1 = std::abs(q.s1 - s1_back) < 1e-14 ? 0 : path_maslov(a1, LineSlope::slope_one());

  auto tau_at = [&](const IntersectionPoint& x) {
    const Vec2 d0 = L0.direction(x.s0);
    const Vec2 d1 = L1.direction(x.s1);
    return triple_index(LineSlope::of_direction(d0), LineSlope::of_direction(d1),
                        LineSlope::slope_one());
  };
  const int tau_p = tau_at(p);
  const int tau_q = tau_at(q);
  const int z = z_of_loop_jiggled(loop);

  return mod4(mu0 + mu1 + tau_p - tau_q + z);
}

int relative_grading(const IntersectionPoint& p, const IntersectionPoint& q,
                     const LiftedCurve& L0, const LiftedCurve& L1) {
  if (std::abs(p.s0 - q.s0) < 1e-9 && std::abs(p.s1 - q.s1) < 1e-9) return 0;
  const double s0_to = nearest_param(L0, p.s0, q.s0);
  const double s1_back = nearest_param(L1, q.s1, p.s1);
  return relative_grading_paths(p, q, L0, L1, s0_to, s1_back);
}

GradingAssignment anchor_absolute(GradingAssignment g, int generator, int value,
                                  AnchorProvenance provenance) {
  if (generator < 0 || generator >= static_cast<int>(g.grading.size()))
    throw UnknownGenerator();
  const int shift = mod4(value - g.grading[generator]);
  for (int& v : g.grading) v = mod4(v + shift);
  g.anchor_generator = generator;
  g.anchor_value = mod4(value);
  g.provenance = provenance;
  return g;
}

}  // namespace pillowfloer
