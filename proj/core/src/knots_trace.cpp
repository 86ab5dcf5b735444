// Perturbed traceless character varieties of torus-knot tangles: grid-seeded
// Newton, pseudo-arclength continuation of Psi^{-1}(0) in the (u,v,tau) box,
// and the quaternion projection to the pillowcase.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/knots.hpp"

namespace pillowfloer {

// ---------------------------------------------------------------------------
// Psi and its Jacobian

std::array<double, 2> psi(const TorusSpec& sp, double u, double v, double tau) {
  const double qr = sp.q - sp.r, spp = sp.s + sp.p;
  const double a1 = spp * u + qr * sp.epsA * std::sin(u);
  const double b1 = qr * v - spp * sp.epsB * std::sin(v);
  const double a2 = sp.s * u - sp.r * sp.epsA * std::sin(u);
  const double b2 = -sp.r * v - sp.s * sp.epsB * std::sin(v);
  return {std::cos(b1) * std::cos(a1) - std::sin(b1) * std::sin(a1) * tau,
          std::cos(b2) * std::cos(a2) - std::sin(b2) * std::sin(a2) * tau};
}

std::array<std::array<double, 5>, 2> psi_jacobian(const TorusSpec& sp, double u, double v,
                                                  double tau) {
  const double qr = sp.q - sp.r, spp = sp.s + sp.p;
  const double a1 = spp * u + qr * sp.epsA * std::sin(u);
  const double da1_u = spp + qr * sp.epsA * std::cos(u);
  const double da1_eA = qr * std::sin(u);
  const double b1 = qr * v - spp * sp.epsB * std::sin(v);
  const double db1_v = qr - spp * sp.epsB * std::cos(v);
  const double db1_eB = -spp * std::sin(v);
  const double a2 = sp.s * u - sp.r * sp.epsA * std::sin(u);
  const double da2_u = sp.s - sp.r * sp.epsA * std::cos(u);
  const double da2_eA = -sp.r * std::sin(u);
  const double b2 = -sp.r * v - sp.s * sp.epsB * std::sin(v);
  const double db2_v = -sp.r - sp.s * sp.epsB * std::cos(v);
  const double db2_eB = -sp.s * std::sin(v);

  std::array<std::array<double, 5>, 2> J{};
  // order: epsA, epsB, u, v, tau
  const double dPsi1_da1 = -std::cos(b1) * std::sin(a1) - std::sin(b1) * std::cos(a1) * tau;
  const double dPsi1_db1 = -std::sin(b1) * std::cos(a1) - std::cos(b1) * std::sin(a1) * tau;
  J[0][0] = dPsi1_da1 * da1_eA;
  J[0][1] = dPsi1_db1 * db1_eB;
  J[0][2] = dPsi1_da1 * da1_u;
  J[0][3] = dPsi1_db1 * db1_v;
  J[0][4] = -std::sin(b1) * std::sin(a1);
  const double dPsi2_da2 = -std::cos(b2) * std::sin(a2) - std::sin(b2) * std::cos(a2) * tau;
  const double dPsi2_db2 = -std::sin(b2) * std::cos(a2) - std::cos(b2) * std::sin(a2) * tau;
  J[1][0] = dPsi2_da2 * da2_eA;
  J[1][1] = dPsi2_db2 * db2_eB;
  J[1][2] = dPsi2_da2 * da2_u;
  J[1][3] = dPsi2_db2 * db2_v;
  J[1][4] = -std::sin(b2) * std::sin(a2);
  return J;
}

// ---------------------------------------------------------------------------
// quaternions

Quaternion Quaternion::operator*(const Quaternion& o) const {
  return {w * o.w - x * o.x - y * o.y - z * o.z, w * o.x + x * o.w + y * o.z - z * o.y,
          w * o.y - x * o.z + y * o.w + z * o.x, w * o.z + x * o.y - y * o.x + z * o.w};
}

Quaternion Quaternion::pow(long k) const {
  Quaternion r;
  const Quaternion base = k >= 0 ? *this : conj();
  for (long i = 0; i < std::labs(k); ++i) r = r * base;
  return r;
}

Quaternion Quaternion::exp_im(double ax, double ay, double az, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c, s * ax, s * ay, s * az};
}

namespace {

struct Vec3 {
  double u, v, t;
  Vec3 operator+(const Vec3& o) const { return {u + o.u, v + o.v, t + o.t}; }
  Vec3 operator-(const Vec3& o) const { return {u - o.u, v - o.v, t - o.t}; }
  Vec3 operator*(double s) const { return {u * s, v * s, t * s}; }
  double norm() const { return std::sqrt(u * u + v * v + t * t); }
  double dot(const Vec3& o) const { return u * o.u + v * o.v + t * o.t; }
};

struct Jac23 {
  double a[2][3];
};

Jac23 jac_uvt(const TorusSpec& sp, const Vec3& x) {
  const auto J = psi_jacobian(sp, x.u, x.v, x.t);
  Jac23 r;
  for (int i = 0; i < 2; ++i) {
    r.a[i][0] = J[i][2];
    r.a[i][1] = J[i][3];
    r.a[i][2] = J[i][4];
  }
  return r;
}

Vec3 kernel_dir(const Jac23& J) {
  // cross product of the two rows spans the null space
  const Vec3 r1{J.a[0][0], J.a[0][1], J.a[0][2]};
  const Vec3 r2{J.a[1][0], J.a[1][1], J.a[1][2]};
  Vec3 c{r1.v * r2.t - r1.t * r2.v, r1.t * r2.u - r1.u * r2.t, r1.u * r2.v - r1.v * r2.u};
  const double n = c.norm();
  if (n < 1e-300) return {0, 0, 0};
  return c * (1.0 / n);
}

double sigma_min(const Jac23& J) {
  // smallest singular value via the 2x2 Gram matrix
  double g11 = 0, g12 = 0, g22 = 0;
  for (int k = 0; k < 3; ++k) {
    g11 += J.a[0][k] * J.a[0][k];
    g12 += J.a[0][k] * J.a[1][k];
    g22 += J.a[1][k] * J.a[1][k];
  }
  const double tr = g11 + g22;
  const double disc = std::sqrt(std::max(0.0, (g11 - g22) * (g11 - g22) + 4 * g12 * g12));
  const double lmin = 0.5 * (tr - disc);
  return std::sqrt(std::max(0.0, lmin));
}

bool inside_box(const Vec3& x, double eps = 1e-9) {
  return x.u >= -eps && x.u <= kPi + eps && x.v >= -eps && x.v <= kPi + eps &&
         x.t >= -1 - eps && x.t <= 1 + eps;
}

bool on_boundary(const Vec3& x, double eps = 1e-7) {
  return x.u < eps || x.u > kPi - eps || x.v < eps || x.v > kPi - eps || std::abs(x.t) > 1 - eps;
}

// Gauss-Newton to the curve (underdetermined: minimum-norm step)
bool newton_to_curve(const TorusSpec& sp, Vec3* x, double tol) {
  for (int it = 0; it < 60; ++it) {
    const auto F = psi(sp, x->u, x->v, x->t);
    const double fn = std::hypot(F[0], F[1]);
    if (fn < tol) return true;
    const Jac23 J = jac_uvt(sp, *x);
    double g11 = 0, g12 = 0, g22 = 0;
    for (int k = 0; k < 3; ++k) {
      g11 += J.a[0][k] * J.a[0][k];
      g12 += J.a[0][k] * J.a[1][k];
      g22 += J.a[1][k] * J.a[1][k];
    }
    const double det = g11 * g22 - g12 * g12;
    if (std::abs(det) < 1e-300) return false;
    const double y0 = (-F[0] * g22 + F[1] * g12) / det;
    const double y1 = (-F[1] * g11 + F[0] * g12) / det;
    const Vec3 dx{J.a[0][0] * y0 + J.a[1][0] * y1, J.a[0][1] * y0 + J.a[1][1] * y1,
                  J.a[0][2] * y0 + J.a[1][2] * y1};
    *x = *x + dx;
    if (dx.norm() > 2.0) return false;
  }
  return std::hypot(psi(sp, x->u, x->v, x->t)[0], psi(sp, x->u, x->v, x->t)[1]) < 10 * tol;
}

// corrector for the pseudo-arclength step: Psi = 0 and T . (y - xp) = 0
bool correct(const TorusSpec& sp, const Vec3& T, const Vec3& xp, Vec3* y, double tol) {
  for (int it = 0; it < 40; ++it) {
    const auto F = psi(sp, y->u, y->v, y->t);
    const double g = T.dot(*y - xp);
    if (std::hypot(F[0], F[1]) < tol && std::abs(g) < tol) return true;
    const Jac23 J = jac_uvt(sp, *y);
    double A[3][4] = {{J.a[0][0], J.a[0][1], J.a[0][2], -F[0]},
                      {J.a[1][0], J.a[1][1], J.a[1][2], -F[1]},
                      {T.u, T.v, T.t, -g}};
    // gaussian elimination with partial pivoting
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int r2 = c + 1; r2 < 3; ++r2)
        if (std::abs(A[r2][c]) > std::abs(A[piv][c])) piv = r2;
      if (std::abs(A[piv][c]) < 1e-300) return false;
      std::swap(A[c], A[piv]);
      for (int r2 = 0; r2 < 3; ++r2) {
        if (r2 == c) continue;
        const double f = A[r2][c] / A[c][c];
        for (int cc = c; cc < 4; ++cc) A[r2][cc] -= f * A[c][cc];
      }
    }
    const Vec3 dy{A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
    *y = *y + dy;
    if (dy.norm() > 1.0) return false;
  }
  return false;
}

struct TraceSample {
  Vec3 x;
  double smin;
};

struct TracedComponent {
  std::vector<Vec3> pts;
  bool circle = false;
  std::vector<TraceSample> svlog;
};

TracedComponent trace_component(const TorusSpec& sp, Vec3 x0, const TraceOptions& opt) {
  TracedComponent out;
  newton_to_curve(sp, &x0, opt.newton_tol);
  const Vec3 T0 = kernel_dir(jac_uvt(sp, x0));
  if (T0.norm() < 0.5) {
    out.pts = {x0};
    return out;
  }

  std::vector<Vec3> fwd, bwd;
  for (int direction : {1, -1}) {
    Vec3 x = x0;
    Vec3 T = T0 * direction;
    double h = opt.step;
    double arclen = 0;
    std::vector<Vec3>& seg = direction == 1 ? fwd : bwd;
    bool closed = false;
    for (int step = 0; step < 20000; ++step) {
      // try a ladder of step sizes; a successful step must stay direction
      // coherent, otherwise the corrector hopped onto a crossing branch
      Vec3 y{};
      bool ok = false;
      bool boundary_squeeze = false;
      for (double f : {1.0, 0.5, 0.25, 0.125, 0.0625, 1.5, 0.01, 0.001}) {
        const double hh = h * f;
        if (hh > 2 * opt.max_step) continue;
        Vec3 cand = x + T * hh;
        if (!correct(sp, T, x + T * hh, &cand, opt.newton_tol)) continue;
        if (!inside_box(cand, 0)) {
          boundary_squeeze = true;
          continue;
        }
        const Vec3 d = cand - x;
        const double dn = d.norm();
        if (dn < 1e-13) continue;
        if (d.dot(T) / dn < 0.8) continue;          // veered: likely a branch jump
        if ((cand - (x + T * hh)).norm() > 0.75 * hh) continue;  // left the trust region
        y = cand;
        ok = true;
        if (f < 1.0 && h > 4 * opt.step) h *= 0.5;
        break;
      }
      if (!ok) {
        if (boundary_squeeze) {
          // walk into the box face along the tangent
          double lo = 0, hi = h;
          Vec3 best = x;
          for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            Vec3 cand = x + T * mid;
            if (correct(sp, T, x + T * mid, &cand, opt.newton_tol) && inside_box(cand, 0)) {
              best = cand;
              lo = mid;
            } else {
              hi = mid;
            }
          }
          if ((best - x).norm() > 1e-12) seg.push_back(best);
          if (!seg.empty()) {
            Vec3 last = seg.back();
            last.u = std::clamp(last.u, 0.0, kPi);
            last.v = std::clamp(last.v, 0.0, kPi);
            last.t = std::clamp(last.t, -1.0, 1.0);
            seg.back() = last;
          }
        }
        break;
      }
      const Jac23 Jy = jac_uvt(sp, y);
      out.svlog.push_back({y, sigma_min(Jy)});
      Vec3 Tn = kernel_dir(Jy);
      if (Tn.norm() < 0.5) Tn = T;  // tangent unreliable at a near-singular point
      if (Tn.dot(T) < 0) Tn = Tn * -1.0;
      const double dstep = (y - x).norm();
      arclen += dstep;
      const Vec3 stepdir = (y - x) * (1.0 / std::max(dstep, 1e-300));
      if (direction == 1 && arclen > 20 * opt.step &&
          (y - x0).norm() < std::max(1.5 * dstep, 2e-3) && stepdir.dot(T0) > 0.3) {
        seg.push_back(x0);
        closed = true;
        break;
      }
      // revisit detection: returning onto an earlier stretch closes the loop
      if (direction == 1 && static_cast<int>(seg.size()) > 40 && step % 4 == 0) {
        for (size_t j = 0; j + 40 < seg.size(); ++j) {
          if ((y - seg[j]).norm() < 0.5 * std::max(dstep, 1e-4)) {
            seg.erase(seg.begin(), seg.begin() + j);
            seg.push_back(seg.front());
            closed = true;
            break;
          }
        }
        if (closed) {
          out.circle = true;
          out.pts = seg;
          return out;
        }
      }
      if (arclen > 150.0) break;  // runaway guard
      seg.push_back(y);
      x = y;
      T = Tn;
      if (h < opt.max_step) h *= 1.3;
      if (on_boundary(y)) break;
    }
    if (closed) {
      out.circle = true;
      out.pts.push_back(x0);
      out.pts.insert(out.pts.end(), seg.begin(), seg.end());
      return out;
    }
  }
  out.pts.assign(bwd.rbegin(), bwd.rend());
  out.pts.push_back(x0);
  out.pts.insert(out.pts.end(), fwd.begin(), fwd.end());
  return out;
}

// refine a sigma_min dip and decide whether it is a genuine rank drop
std::optional<SingularityDiagnostic> refine_singular(const TorusSpec& sp, Vec3 x,
                                                     const TraceOptions& opt) {
  // Newton on [Psi_1, Psi_2, det(J J^T)] = 0
  auto detJJ = [&](const Vec3& y) {
    const Jac23 J = jac_uvt(sp, y);
    double g11 = 0, g12 = 0, g22 = 0;
    for (int k = 0; k < 3; ++k) {
      g11 += J.a[0][k] * J.a[0][k];
      g12 += J.a[0][k] * J.a[1][k];
      g22 += J.a[1][k] * J.a[1][k];
    }
    return g11 * g22 - g12 * g12;
  };
  for (int it = 0; it < 60; ++it) {
    const auto F = psi(sp, x.u, x.v, x.t);
    const double d = detJJ(x);
    if (std::hypot(F[0], F[1]) < 1e-11 && std::abs(d) < 1e-14) break;
    const Jac23 J = jac_uvt(sp, x);
    // finite-difference gradient of detJJ
    const double hh = 1e-6;
    const double gu = (detJJ({x.u + hh, x.v, x.t}) - detJJ({x.u - hh, x.v, x.t})) / (2 * hh);
    const double gv = (detJJ({x.u, x.v + hh, x.t}) - detJJ({x.u, x.v - hh, x.t})) / (2 * hh);
    const double gt = (detJJ({x.u, x.v, x.t + hh}) - detJJ({x.u, x.v, x.t - hh})) / (2 * hh);
    double A[3][4] = {{J.a[0][0], J.a[0][1], J.a[0][2], -F[0]},
                      {J.a[1][0], J.a[1][1], J.a[1][2], -F[1]},
                      {gu, gv, gt, -d}};
    for (int c = 0; c < 3; ++c) {
      int piv = c;
      for (int r2 = c + 1; r2 < 3; ++r2)
        if (std::abs(A[r2][c]) > std::abs(A[piv][c])) piv = r2;
      if (std::abs(A[piv][c]) < 1e-300) return std::nullopt;
      std::swap(A[c], A[piv]);
      for (int r2 = 0; r2 < 3; ++r2) {
        if (r2 == c) continue;
        const double f = A[r2][c] / A[c][c];
        for (int cc = c; cc < 4; ++cc) A[r2][cc] -= f * A[c][cc];
      }
    }
    const Vec3 dx{A[0][3] / A[0][0], A[1][3] / A[1][1], A[2][3] / A[2][2]};
    x = x + dx;
    if (dx.norm() > 0.5) return std::nullopt;
  }
  const auto F = psi(sp, x.u, x.v, x.t);
  const double smin = sigma_min(jac_uvt(sp, x));
  const bool interior = x.u > 0.03 && x.u < kPi - 0.03 && x.v > 0.03 && x.v < kPi - 0.03 &&
                        std::abs(x.t) < 0.97;
  if (std::hypot(F[0], F[1]) < 1e-9 && smin < opt.singular_tol && interior)
    return SingularityDiagnostic{{x.u, x.v, x.t}, smin};
  return std::nullopt;
}

}  // namespace

TraceResult trace_character_variety(const TorusSpec& sp, const TraceOptions& opt) {
  TraceResult res;
  std::vector<TracedComponent> comps;

  const int G = opt.seed_grid;
  auto near_existing = [&](const Vec3& x) {
    for (const auto& c : comps)
      for (const auto& p : c.pts)
        if ((p - x).norm() < 4e-2) return true;
    return false;
  };

  for (int iu = 1; iu < G; ++iu) {
    for (int iv = 1; iv < G; ++iv) {
      for (int itau = 0; itau <= G; ++itau) {
        const Vec3 seed{kPi * iu / G, kPi * iv / G, -0.99 + 1.98 * itau / G};
        const auto F = psi(sp, seed.u, seed.v, seed.t);
        if (std::abs(F[0]) > 0.08 || std::abs(F[1]) > 0.08) continue;
        Vec3 x = seed;
        if (!newton_to_curve(sp, &x, opt.newton_tol)) continue;
        if (!inside_box(x, 1e-6)) continue;
        if (near_existing(x)) continue;
        auto tc = trace_component(sp, x, opt);
        if (tc.pts.size() < 6) continue;
        comps.push_back(std::move(tc));
      }
    }
  }

  // singularity scan: refine every interior dip of sigma_min
  for (const auto& c : comps) {
    for (size_t i = 0; i < c.svlog.size(); ++i) {
      const auto& s = c.svlog[i];
      if (s.smin > opt.singular_scan) continue;
      const bool localmin = (i == 0 || c.svlog[i - 1].smin >= s.smin) &&
                            (i + 1 == c.svlog.size() || c.svlog[i + 1].smin >= s.smin);
      if (!localmin) continue;
      if (auto d = refine_singular(sp, s.x, opt)) {
        bool dup = false;
        for (const auto& e : res.singularities) {
          const Vec3 a{e.where.u, e.where.v, e.where.tau};
          const Vec3 b{d->where.u, d->where.v, d->where.tau};
          if ((a - b).norm() < 5e-2) dup = true;
        }
        if (!dup) res.singularities.push_back(*d);
      }
    }
  }
  if (!res.singularities.empty()) {
    std::ostringstream os;
    os << "rank-deficient Jacobian at " << res.singularities.size()
       << " interior point(s); the unperturbed variety is singular there";
    res.warnings.push_back(os.str());
  }

  // arcs first, then circles, deterministic order
  std::stable_sort(comps.begin(), comps.end(),
                   [](const TracedComponent& a, const TracedComponent& b) {
                     return !a.circle && b.circle;
                   });
  int idx = 0;
  for (auto& c : comps) {
    CharVarietyComponent cc;
    cc.kind = c.circle ? ComponentKind::CircleComponent : ComponentKind::ArcComponent;
    double maxres = 0;
    for (const auto& p : c.pts) {
      const auto F = psi(sp, p.u, p.v, p.t);
      maxres = std::max(maxres, std::max(std::abs(F[0]), std::abs(F[1])));
      cc.samples.push_back({p.u, p.v, p.t});
    }
    cc.max_residual = maxres;
    cc.pillow_trace =
        project_to_pillowcase(cc.samples, sp, cc.kind, "R" + std::to_string(idx), opt);
    if (cc.kind == ComponentKind::ArcComponent) {
      cc.endpoints[0] = cc.pillow_trace.vertices.front();
      cc.endpoints[1] = cc.pillow_trace.vertices.back();
    }
    res.components.push_back(std::move(cc));
    ++idx;
  }
  return res;
}

// ---------------------------------------------------------------------------
// projection

namespace {

struct PillowSample {
  double gamma, theta;  // canonical gamma in [0,pi], theta in (-pi,pi]
  bool ambiguous;       // rho(b) = +-rho(a): fold-line sample
};

PillowSample project_one(const TorusSpec& sp, const Vec3& x, const Quaternion* prev_frame,
                         Quaternion* frame_out) {
  const double tau = std::clamp(x.t, -1.0, 1.0);
  const double st = std::sqrt(std::max(0.0, 1 - tau * tau));
  const Quaternion rA1 = Quaternion::exp_im(1, 0, 0, x.u);
  const Quaternion rA2 = Quaternion::exp_im(1, 0, 0, sp.epsA * std::sin(x.u));
  const Quaternion rB1 = Quaternion::exp_im(tau, st, 0, x.v);
  const Quaternion rB2 = Quaternion::exp_im(tau, st, 0, sp.epsB * std::sin(x.v));

  const long qr = sp.q - sp.r, spp = sp.s + sp.p;
  const Quaternion ra = rA1.pow(spp) * rA2.pow(qr) * rB1.pow(qr) * rB2.pow(-spp);
  const Quaternion rb = rB1.pow(-sp.r) * rB2.pow(-sp.s) * rA1.pow(sp.s) * rA2.pow(-sp.r);
  const Quaternion rx = rB2.pow(sp.s) * rB1.pow(sp.r);
  const Quaternion rc = rx.conj() * ra * rx;

  // align rho(a) to i
  double nx = ra.x, ny = ra.y, nz = ra.z;
  const double nn = std::sqrt(nx * nx + ny * ny + nz * nz);
  Quaternion h1{1, 0, 0, 0};
  if (nn > 1e-14) {
    nx /= nn;
    ny /= nn;
    nz /= nn;
    const double d = nx;  // dot with i
    if (d < -1 + 1e-13) {
      h1 = {0, 0, 1, 0};  // rotate by pi about j
    } else if (d < 1 - 1e-13) {
      // axis = n x i, angle = acos(d)
      double ax = ny * 0 - nz * 0, ay = nz * 1 - nx * 0, az = nx * 0 - ny * 1;
      ax = 0;
      ay = nz;
      az = -ny;
      const double an = std::sqrt(ay * ay + az * az);
      const double ang = std::acos(std::clamp(d, -1.0, 1.0));
      h1 = Quaternion::exp_im(ax, ay / an, az / an, ang / 2);
    }
  }
  auto conj_by = [](const Quaternion& h, const Quaternion& q) { return h * q * h.conj(); };
  const Quaternion ra1 = conj_by(h1, ra);
  const Quaternion rb1 = conj_by(h1, rb);
  const Quaternion rc1 = conj_by(h1, rc);

  const Quaternion w = rb1 * ra1.conj();
  const double jk = std::hypot(w.y, w.z);
  PillowSample out;
  out.ambiguous = jk < 1e-8;

  Quaternion h2{1, 0, 0, 0};
  if (!out.ambiguous) {
    // rotate about i so Im(w) aligns with +k
    const double cur = std::atan2(w.y, w.z);
    h2 = Quaternion::exp_im(1, 0, 0, cur / 2);
    Quaternion wtest = conj_by(h2, w);
    if (std::abs(wtest.y) > 1e-6) {
      h2 = Quaternion::exp_im(1, 0, 0, -cur / 2);
      wtest = conj_by(h2, w);
    }
    if (wtest.z < 0) {
      h2 = Quaternion::exp_im(1, 0, 0, kPi / 2) * h2;
    }
  } else if (prev_frame) {
    h2 = *prev_frame;
  }
  if (frame_out) *frame_out = h2;

  const Quaternion rb2 = conj_by(h2, rb1);
  const Quaternion rc2 = conj_by(h2, rc1);
  const Quaternion ra2 = conj_by(h2, ra1);

  const Quaternion wb = rb2 * ra2.conj();
  const Quaternion wc = rc2 * ra2.conj();
  if (out.ambiguous) {
    out.gamma = wb.w > 0 ? 0.0 : kPi;
  } else {
    out.gamma = std::atan2(std::max(wb.z, 0.0), wb.w);
  }
  out.theta = std::atan2(wc.z, wc.w);
  if (!out.ambiguous && std::abs(wc.y) > 1e-6)
    throw AmbiguousConjugation("projection normal form has a residual j-component");
  return out;
}

Vec2 nearest_deck_image(const Vec2& canon, const Vec2& target, double* d_best,
                        double* d_second) {
  Vec2 best;
  double bd = 1e300, second = 1e300;
  for (int sigma : {1, -1}) {
    const Vec2 s{sigma * canon.x, sigma * canon.y};
    const double m0 = std::round((target.x - s.x) / kTwoPi);
    const double n0 = std::round((target.y - s.y) / kTwoPi);
    for (int dm = -1; dm <= 1; ++dm)
      for (int dn = -1; dn <= 1; ++dn) {
        const Vec2 cand{s.x + kTwoPi * (m0 + dm), s.y + kTwoPi * (n0 + dn)};
        const double d = dist(cand, target);
        if (d < bd) {
          second = bd;
          bd = d;
          best = cand;
        } else if (d < second && dist(cand, best) > 1e-12) {
          second = d;
        }
      }
  }
  if (d_best) *d_best = bd;
  if (d_second) *d_second = second;
  return best;
}

}  // namespace

LiftedCurve project_to_pillowcase(const std::vector<Sample3>& samples_in, const TorusSpec& sp,
                                  ComponentKind kind, const std::string& label,
                                  const TraceOptions& opt) {
  if (samples_in.size() < 2) throw InvalidSpec("projection needs at least two samples");

  struct Work {
    Vec3 x;
    PillowSample ps;
  };
  std::vector<Work> work;
  work.reserve(samples_in.size());
  Quaternion frame{1, 0, 0, 0};
  bool have_frame = false;
  for (const auto& s : samples_in) {
    Work w;
    w.x = {s.u, s.v, s.tau};
    w.ps = project_one(sp, w.x, have_frame ? &frame : nullptr, &frame);
    have_frame = true;
    work.push_back(w);
  }
  // an ambiguous head is re-projected with the first good frame
  for (size_t i = 0; i < work.size(); ++i) {
    if (!work[i].ps.ambiguous) {
      if (i > 0) {
        Quaternion f;
        project_one(sp, work[i].x, nullptr, &f);
        for (size_t j = 0; j < i; ++j) work[j].ps = project_one(sp, work[j].x, &f, nullptr);
      }
      break;
    }
  }

  // arcs: samples crowding the limit corners carry no reliable fold choice;
  // drop them before unfolding and re-attach the exact corners afterwards
  const double r_snap = 0.06;
  if (kind == ComponentKind::ArcComponent) {
    auto canon_corner_dist = [](const PillowSample& ps) {
      const double dg = std::min(ps.gamma, std::abs(kPi - ps.gamma));
      double dt = std::min(std::abs(ps.theta), std::abs(kPi - std::abs(ps.theta)));
      return std::hypot(dg, dt);
    };
    size_t h0 = 0, h1 = work.size();
    while (h0 < work.size() && canon_corner_dist(work[h0].ps) < r_snap) ++h0;
    while (h1 > h0 && canon_corner_dist(work[h1 - 1].ps) < r_snap) --h1;
    if (h1 - h0 < 2) throw UnfoldJump("arc collapses into its corner neighborhoods");
    std::vector<Work> trimmed(work.begin() + h0, work.begin() + h1);
    work = std::move(trimmed);
  }

  // continuity unfolding with on-demand refinement; candidates are accepted
  // when they dominate the runner-up deck image relative to the velocity
  // prediction (the ambiguity radius shrinks linearly near fold lines while
  // the prediction error shrinks quadratically with the step)
  const bool dbg = std::getenv("PILLOWFLOER_DEBUG_UNFOLD") != nullptr;
  std::vector<Vec2> lift;
  lift.push_back({work[0].ps.gamma, work[0].ps.theta});
  size_t k = 1;
  long guard = 0;
  while (k < work.size()) {
    if (++guard > 400000) throw UnfoldJump("unfolding failed to converge");
    if (dbg && guard % 50 == 0)
      std::fprintf(stderr, "[unfold %s] k=%zu/%zu lift=(%.3f,%.3f) uvt=(%.4f,%.4f,%.4f)\n",
                   label.c_str(), k, work.size(), lift.back().x, lift.back().y, work[k].x.u,
                   work[k].x.v, work[k].x.t);
    const Vec2 prev = lift.back();
    const Vec2 pred = lift.size() >= 2 ? prev + (prev - lift[lift.size() - 2]) : prev;
    double d1 = 0, d2 = 0;
    Vec2 cand = nearest_deck_image({work[k].ps.gamma, work[k].ps.theta}, pred, &d1, &d2);
    bool dominated = d1 <= 0.25 * d2;
    {
      // a lift segment may not pass through a lattice point: if it would,
      // the prediction jumped the fold image across a corner; fall back to
      // plain proximity to the previous point
      const Vec2 mid = (prev + cand) * 0.5;
      const double seg_len = dist(prev, cand);
      const double clr = std::min({lattice_distance(prev), lattice_distance(mid),
                                   lattice_distance(cand)});
      if (clr < 0.05 && seg_len > 1.2 * lattice_distance(prev)) {
        cand = nearest_deck_image({work[k].ps.gamma, work[k].ps.theta}, prev, &d1, &d2);
        dominated = true;
      }
    }
    const double dprev = dist(cand, prev);
    const bool at_branch_point = lattice_distance(prev) < 1e-6;
    // keep the PL turning well below pi/2
    bool sharp = false;
    if (lift.size() >= 2 && dprev > 1e-6) {
      const Vec2 e0 = prev - lift[lift.size() - 2];
      const Vec2 e1 = cand - prev;
      if (norm(e0) > 1e-9) {
        const double turn = std::abs(std::atan2(cross(e0, e1), dot(e0, e1)));
        sharp = turn > 0.5 && norm(e0) + norm(e1) > 1e-5;
      }
    }
    bool jump = dprev > 0.35 || sharp || (!dominated && !at_branch_point && dprev > 1e-9);
    if (jump) {
      const double curve_gap = (work[k].x - work[k - 1].x).norm();
      if (curve_gap < 1e-9) {
        // cannot refine further; near a corner both fold images continue the
        // same curve, so the nearest one is taken
        jump = false;
      } else {
        Vec3 mid = (work[k - 1].x + work[k].x) * 0.5;
        if (!newton_to_curve(sp, &mid, opt.newton_tol))
          throw UnfoldJump("midpoint refinement left the traced curve");
        Work w;
        w.x = mid;
        Quaternion f;
        w.ps = project_one(sp, mid, nullptr, &f);
        work.insert(work.begin() + k, w);
        continue;
      }
    }
    if (dprev > 1e-9) lift.push_back(cand);
    k++;
  }

  // drop stalls, enforce PL genericity by dropping micro-edges
  std::vector<Vec2> pts;
  for (const auto& p : lift)
    if (pts.empty() || dist(p, pts.back()) > 1e-7) pts.push_back(p);

  // remove residual retrace spikes (near-pi turns from fold mis-picks in
  // ambiguous zones); each removal deletes the spike apex
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (size_t i = 0; i + 2 < pts.size();) {
      const Vec2 e0 = pts[i + 1] - pts[i];
      const Vec2 e1 = pts[i + 2] - pts[i + 1];
      const double turn = std::abs(std::atan2(cross(e0, e1), dot(e0, e1)));
      if (turn > 1.45) {
        pts.erase(pts.begin() + i + 1);
        changed = true;
        if (i > 0) --i;
      } else {
        ++i;
      }
    }
    if (!changed) break;
  }

  if (kind == ComponentKind::ArcComponent) {
    // terminate at exact corner lifts; the fold choice inside a small ball
    // around each corner is unreliable, so those samples are discarded
    auto snap_corner = [](const Vec2& v) {
      return Vec2{kPi * std::round(v.x / kPi), kPi * std::round(v.y / kPi)};
    };
    const Vec2 c0 = snap_corner(pts.front());
    const Vec2 c1 = snap_corner(pts.back());
    if (dist(c0, pts.front()) > 0.5 || dist(c1, pts.back()) > 0.5) {
      std::ostringstream os;
      os << "arc does not terminate near a corner lift: ends (" << pts.front().x << ","
         << pts.front().y << ") and (" << pts.back().x << "," << pts.back().y << ")";
      throw UnfoldJump(os.str());
    }
    std::vector<Vec2> inner;
    inner.push_back(c0);
    for (const auto& p : pts)
      if (lattice_distance(p) > 1e-4) inner.push_back(p);
    inner.push_back(c1);
    auto arc = make_arc(std::move(inner), label);
    return arc;
  }

  // circle: identify the closure translate and close up exactly
  const Vec2 first = pts.front();
  Vec2 last = pts.back();
  DeckElement G;
  {
    double bd = 1e300;
    for (int sigma : {1, -1}) {
      const Vec2 s{sigma * first.x, sigma * first.y};
      const long m = std::lround((last.x - s.x) / kTwoPi);
      const long n = std::lround((last.y - s.y) / kTwoPi);
      const Vec2 cand{s.x + kTwoPi * m, s.y + kTwoPi * n};
      if (dist(cand, last) < bd) {
        bd = dist(cand, last);
        G = DeckElement{m, n, sigma};
      }
    }
    if (bd > 0.3) throw UnfoldJump("traced circle does not close up");
  }
  if (dist(pts.back(), G.apply(first)) > 1e-7)
    pts.push_back(G.apply(first));
  else
    pts.back() = G.apply(first);
  return make_circle(std::move(pts), G, label);
}

// ---------------------------------------------------------------------------
// full pipeline

TorusKnotReport torus_knot_homology(const TorusSpec& sp, double eps,
                                    const PerturbationFunction& g,
                                    std::optional<int> signature_override,
                                    const TraceOptions& opt) {
  TorusKnotReport rep;
  rep.spec = sp;
  rep.signature = signature_override ? *signature_override : signature_torus(sp.p, sp.q);
  rep.trace = trace_character_variety(sp, opt);
  rep.warnings = rep.trace.warnings;

  std::vector<LiftedCurve> comps;
  for (const auto& c : rep.trace.components) comps.push_back(c.pillow_trace);

  for (const auto& c : comps) {
    try {
      const auto r = check_restricted(c);
      if (!r.ok) rep.warnings.push_back(c.label + " fails restrictedness: " + r.detail);
    } catch (const Error& e) {
      rep.warnings.push_back(c.label + " restrictedness check failed: " + e.what());
    }
  }

  std::vector<PerturbationFunction> retries;
  retries.push_back(g);
  for (double d : {0.0, 0.03, -0.03, 0.07, -0.07}) {
    PerturbationFunction alt = PerturbationFunction::sine(d);
    if (g.is_zero() && d == 0.0) continue;
    retries.push_back(alt);
  }

  std::optional<ChainComplexZ4> built;
  std::string lasterr;
  for (const auto& gg : retries) {
    try {
      const LiftedCurve L0 = figure_eight(eps, gg);
      BigonOptions bopt;
      auto cx = build_complex(L0, comps, rep.signature, bopt);
      built = std::move(cx);
      rep.g_used = gg;
      break;
    } catch (const NonTransverse& e) {
      lasterr = e.what();
      continue;
    }
  }
  if (!built) throw NonTransverse("all retry perturbations failed: " + lasterr);
  if (!rep.g_used.is_zero()) {
    std::ostringstream os;
    os << "transversality required the isotopy g = " << rep.g_used.coeffs[0] << " sin";
    rep.warnings.push_back(os.str());
  }
  rep.eps_used = eps;
  rep.complex = std::move(*built);
  for (const auto& c : rep.complex.components)
    rep.component_homology.push_back(homology_component(c));
  rep.total_homology = homology(rep.complex);
  for (const auto& w : rep.complex.warnings) rep.warnings.push_back(w);
  return rep;
}

}  // namespace pillowfloer
