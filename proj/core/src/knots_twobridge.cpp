// Exact 2-bridge pillowcase complexes.  The binary dihedral arc is the linear
// embedding t |-> (q t, (q-p) t); its crossings with L0^{eps,0} in the eps->0
// limit sit over the diagonal points x_l, and the relative gradings follow
// from exact crossing counts of the connecting loop with the three dual-arc
// line families.  All coordinates are rational multiples of pi.

#include <algorithm>
#include <sstream>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/knots.hpp"

namespace pillowfloer {

LiftedCurve two_bridge_curve(const TwoBridgeSpec& spec, int subdivisions) {
  std::vector<Vec2> v;
  v.reserve(subdivisions + 1);
  for (int k = 0; k <= subdivisions; ++k) {
    const double t = kPi * k / subdivisions;
    v.push_back({spec.q * t, (spec.q - spec.p) * t});
  }
  std::ostringstream label;
  label << "K(" << spec.p << "," << spec.q << ")";
  auto arc = make_arc(std::move(v), label.str());
  return arc;
}

namespace {

// parity-aware mod 2 for rationals (units of pi)
Rational mod2(Rational x) {
  const long long f = (x * Rational(1, 2)).floor_ll();
  return x - Rational(2 * f);
}

// fold-parity key: +1 on (0,1) mod 2, -1 on (1,2); integral keys are
// geometric corner hits and must not happen
int dkey(const Rational& coord) {
  const Rational m = mod2(coord);
  if (m.num == 0 || m == Rational(1)) throw InvalidSpec("2-bridge crossing at a lattice point");
  return m < Rational(1) ? 1 : -1;
}

int sgn(long v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

int two_bridge_grading_to_anchor(const TwoBridgeSpec& spec, long ell) {
  const long p = spec.p, q = spec.q;
  if (ell < 1 || ell > (p - 1) / 2) throw UnknownGenerator("x_l index out of range");

  const Rational t_ell(2 * ell, p);
  const Rational gamma_raw = Rational(q) * t_ell;
  const Rational gm = mod2(gamma_raw);
  const Rational gc = gm < Rational(1) ? gm : Rational(2) - gm;  // canonical gamma, in (0,1)
  const bool upper = gc > Rational(1, 2);

  const bool steep = std::labs(q - p) > std::labs(q);  // |slope| > 1: pair with x^+
  int z_alpha0;
  Rational J;
  if (steep) {
    z_alpha0 = upper ? -1 : 0;
    J = gc + Rational(2);
  } else {
    z_alpha0 = upper ? 1 : 0;
    J = Rational(2) - gc;
  }
  const int s_J = upper ? -1 : 1;

  // deck placement of the L1 lift through the junction J*(1,1)
  int sigma_p = 0;
  Rational Mm, Mn;
  for (int sig : {1, -1}) {
    const Rational mm = (J - Rational(sig) * Rational(q) * t_ell) * Rational(1, 2);
    if (mm.is_integer()) {
      sigma_p = sig;
      Mm = mm;
      Mn = (J - Rational(sig) * Rational(q - p) * t_ell) * Rational(1, 2);
      break;
    }
  }
  if (sigma_p == 0 || !Mn.is_integer()) throw InvalidSpec("2-bridge deck placement failed");
  const long N = sigma_p * ell;  // w-shift of alpha1 in 2pi units

  long total = z_alpha0;

  // A1 crossings along alpha1: w = theta - gamma crosses the even levels 2k
  // strictly between 0 (side s_J) and 2N (side -sigma'); the k = N level is
  // never reached, k = 0 only when the start side opposes the direction.
  {
    const long lo = std::min(0L, N), hi = std::max(0L, N);
    for (long k = lo; k <= hi; ++k) {
      bool crossed;
      if (k == N)
        crossed = false;
      else if (k == 0)
        crossed = (s_J == -sigma_p);
      else
        crossed = true;
      if (!crossed) continue;
      const Rational gstar = k == 0 ? J : J - Rational(2 * k * q, p);
      total += dkey(gstar) * sigma_p;
    }
  }
  // A2 crossings: gamma runs from J to 2 M.m; odd levels strictly between.
  {
    const Rational g_end = Rational(2) * Mm;
    const Rational lo = std::min(J, g_end), hi = std::max(J, g_end);
    // odd o with lo < o < hi
    for (long o = lo.floor_ll() - 1; o <= hi.floor_ll() + 1; ++o) {
      if (((o % 2) + 2) % 2 != 1) continue;
      const Rational ro(o);
      if (!(lo < ro && ro < hi)) continue;
      const Rational theta_star = J + Rational(q - p, q) * (ro - J);
      total += dkey(theta_star) * sigma_p * sgn(q);
    }
  }
  // A3 crossings: theta runs from J to 2 M.n; odd levels strictly between.
  {
    const Rational t_end = Rational(2) * Mn;
    const Rational lo = std::min(J, t_end), hi = std::max(J, t_end);
    for (long o = lo.floor_ll() - 1; o <= hi.floor_ll() + 1; ++o) {
      if (((o % 2) + 2) % 2 != 1) continue;
      const Rational ro(o);
      if (!(lo < ro && ro < hi)) continue;
      const Rational gamma_star = J + Rational(q, q - p) * (ro - J);
      total -= dkey(gamma_star) * sigma_p * sgn(q - p);
    }
  }
  return mod4(total);
}

TwoBridgeComplex two_bridge_complex(const TwoBridgeSpec& spec,
                                    std::optional<int> signature_override) {
  TwoBridgeComplex cx;
  cx.spec = spec;
  cx.signature = signature_override ? *signature_override : signature_two_bridge(spec);
  const int sig4 = mod4(cx.signature);

  TwoBridgeGenerator rplus;
  rplus.label = "r+";
  rplus.gamma_over_pi = Rational(0);
  rplus.grading = sig4;
  cx.generators.push_back(rplus);

  const bool steep = std::labs(spec.q - spec.p) > std::labs(spec.q);
  for (long ell = 1; ell <= (spec.p - 1) / 2; ++ell) {
    const int gr = two_bridge_grading_to_anchor(spec, ell);
    const Rational gm = mod2(Rational(spec.q) * Rational(2 * ell, spec.p));
    const Rational gc = gm < Rational(1) ? gm : Rational(2) - gm;

    TwoBridgeGenerator plus, minus;
    plus.label = "x" + std::to_string(ell) + "+";
    minus.label = "x" + std::to_string(ell) + "-";
    plus.gamma_over_pi = gc;
    minus.gamma_over_pi = gc;
    if (steep) {
      plus.grading = mod4(sig4 - gr);
      minus.grading = mod4(plus.grading - 1);
    } else {
      minus.grading = mod4(sig4 - gr);
      plus.grading = mod4(minus.grading + 1);
    }
    cx.generators.push_back(plus);
    cx.generators.push_back(minus);
  }
  return cx;
}

GradedRanks TwoBridgeComplex::ranks() const {
  GradedRanks r;
  for (const auto& g : generators) r.n[g.grading]++;
  return r;
}

}  // namespace pillowfloer
