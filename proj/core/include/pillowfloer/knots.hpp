#pragma once

// Knot front-ends: exact 2-bridge curves and complexes; torus-knot perturbed
// traceless character varieties via Psi-continuation and quaternion
// projection; signatures and Alexander coefficient sums.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pillowfloer/floer.hpp"
#include "pillowfloer/rational.hpp"

namespace pillowfloer {

struct TwoBridgeSpec {
  long p = 0;  // odd, positive
  long q = 0;  // coprime to p
  TwoBridgeSpec() = default;
  TwoBridgeSpec(long p_, long q_);  // throws InvalidSpec
};

struct TorusSpec {
  long p = 0, q = 0;  // coprime
  long r = 0, s = 0;  // p r + q s = 1, exactly
  double epsA = 0.01;
  double epsB = 0.0;
  TorusSpec() = default;
  TorusSpec(long p_, long q_, long r_, long s_, double eA = 0.01, double eB = 0.0);
};

// ---- 2-bridge knots -------------------------------------------------------

// The restriction of the binary dihedral arc to the pillowcase: the linear
// arc t |-> (q t, (q-p) t), t in [0, pi], with rational-multiple-of-pi
// vertices.  Limiting slope (q-p)/q at both ends.
LiftedCurve two_bridge_curve(const TwoBridgeSpec& spec, int subdivisions = 64);

// Generator of the exact 2-bridge complex.
struct TwoBridgeGenerator {
  std::string label;        // "r+", "x1+", "x1-", ...
  Rational gamma_over_pi;   // canonical gamma of the underlying diagonal point
  int grading = 0;          // absolute Z/4 grading, anchored at sigma(K)
};

struct TwoBridgeComplex {
  TwoBridgeSpec spec;
  int signature = 0;
  std::vector<TwoBridgeGenerator> generators;  // rank p, zero differential
  GradedRanks ranks() const;
};

// Rank-p complex with gradings computed exactly over the rationals from the
// linear-arc crossing combinatorics, anchored at gr(r_+^eps) = sigma(K).
// All differentials vanish.
TwoBridgeComplex two_bridge_complex(const TwoBridgeSpec& spec,
                                    std::optional<int> signature_override = std::nullopt);

// Exact relative grading gr(r_+^eps, x_l^o) for l = 1..(p-1)/2, where x^o is
// x^+ when |(q-p)/q| > 1 and x^- otherwise.  Exposed for cross-validation.
int two_bridge_grading_to_anchor(const TwoBridgeSpec& spec, long ell);

// ---- signatures and Alexander sums ---------------------------------------

// Knot signature of K(p,q) by the exact lattice count
//   sigma = -sum_{i=1}^{p-1} sign(sin(2 pi i / p)) * sign(sin(2 pi i q / p)).
int signature_two_bridge(const TwoBridgeSpec& spec);

// Knot signature of T(p,q): signature of the symmetrized Seifert form of the
// fiber surface, built as the tensor product of the 1-variable forms and
// diagonalized exactly over the rationals.
int signature_torus(long p, long q);

// Sum of |coefficients| of (t^{pq}-1)(t-1)/((t^p-1)(t^q-1)), exact integer
// polynomial division.  Throws NonCoprime.
long alexander_abs_sum_torus(long p, long q);
std::vector<long> alexander_polynomial_torus(long p, long q);

// ---- torus-knot character variety ----------------------------------------

// Unit quaternion (w,x,y,z).
struct Quaternion {
  double w = 1, x = 0, y = 0, z = 0;
  Quaternion() = default;
  Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  Quaternion operator*(const Quaternion& o) const;
  Quaternion conj() const { return {w, -x, -y, -z}; }
  Quaternion pow(long k) const;
  double norm() const { return std::sqrt(w * w + x * x + y * y + z * z); }
  static Quaternion exp_im(double ax, double ay, double az, double angle);
};

// Psi = (Re rho(a), Re rho(b)) as a function of (u, v, tau) for fixed
// perturbation amplitudes; zero set = gauge-fixed perturbed character variety.
std::array<double, 2> psi(const TorusSpec& spec, double u, double v, double tau);
// Full 2x5 Jacobian in (epsA, epsB, u, v, tau).
std::array<std::array<double, 5>, 2> psi_jacobian(const TorusSpec& spec, double u,
                                                  double v, double tau);

struct Sample3 {
  double u, v, tau;
};

enum class ComponentKind { ArcComponent, CircleComponent };

struct SingularityDiagnostic {
  Sample3 where;
  double sigma_min;  // smallest singular value of the (u,v,tau) Jacobian
};

struct CharVarietyComponent {
  ComponentKind kind = ComponentKind::ArcComponent;
  std::vector<Sample3> samples;
  LiftedCurve pillow_trace;          // continuity-unfolded projection
  std::array<Vec2, 2> endpoints{};   // arcs: the two corner lifts
  double max_residual = 0;           // max |Psi| over samples
};

struct TraceOptions {
  int seed_grid = 64;
  double newton_tol = 1e-10;
  double step = 5e-3;
  double max_step = 1.5e-2;
  double singular_tol = 1e-6;   // refined sigma_min below this => singular
  double singular_scan = 5e-3;  // coarse dips below this trigger refinement
};

struct TraceResult {
  std::vector<CharVarietyComponent> components;  // arcs first, then circles
  std::vector<SingularityDiagnostic> singularities;
  std::vector<std::string> warnings;
};

// Grid-seeded Newton + pseudo-arclength continuation over the box
// [0,pi]^2 x [-1,1]; arcs terminate on the box boundary, circles close up.
// Near-singular interior points are reported as diagnostics, never silently
// branched over.
TraceResult trace_character_variety(const TorusSpec& spec, const TraceOptions& opt = {});

// Quaternion projection of a traced component to the pillowcase, unfolded
// into a continuous lift.  Arcs are terminated at exact corner lifts.
LiftedCurve project_to_pillowcase(const std::vector<Sample3>& samples, const TorusSpec& spec,
                                  ComponentKind kind, const std::string& label,
                                  const TraceOptions& opt = {});

struct TorusKnotReport {
  TorusSpec spec;
  int signature = 0;
  TraceResult trace;
  ChainComplexZ4 complex;
  std::vector<GradedRanks> component_homology;
  GradedRanks total_homology;
  double eps_used = 0.1;
  PerturbationFunction g_used;
  std::vector<std::string> warnings;
};

// Full pipeline: trace -> project -> restrictedness checks -> build_complex
// (arc anchored at sigma(T_{p,q})) -> homology.  Retries the small-g isotopy
// family when transversality fails.
TorusKnotReport torus_knot_homology(const TorusSpec& spec, double eps = 0.1,
                                    const PerturbationFunction& g = {},
                                    std::optional<int> signature_override = std::nullopt,
                                    const TraceOptions& opt = {});

}  // namespace pillowfloer
