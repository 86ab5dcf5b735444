#pragma once

// The pillowcase orbifold R^2/(Z^2 x| Z/2): deck arithmetic, canonical
// folding, the Z/4 class z evaluated through dual-arc crossings, winding
// numbers, and the holonomy-perturbation isotopies.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pillowfloer/geom.hpp"

namespace pillowfloer {

// Point (gamma, theta) in the branched cover R^2.
struct LiftPoint {
  double gamma = 0.0;
  double theta = 0.0;

  LiftPoint() = default;
  LiftPoint(double g, double t) : gamma(g), theta(t) {}
  explicit LiftPoint(const Vec2& v) : gamma(v.x), theta(v.y) {}
  Vec2 vec() const { return {gamma, theta}; }
};

bool is_corner_lift(const LiftPoint& p, double tol = kDefaultTol);
double lattice_distance(const Vec2& p);

// Element of Z^2 x| Z/2 acting on R^2 by x |-> sigma*x + 2*pi*(m,n).
struct DeckElement {
  long m = 0;
  long n = 0;
  int sigma = 1;

  static DeckElement identity() { return {}; }

  Vec2 apply(const Vec2& p) const {
    return {sigma * p.x + kTwoPi * m, sigma * p.y + kTwoPi * n};
  }
  LiftPoint apply(const LiftPoint& p) const { return LiftPoint(apply(p.vec())); }

  // (m1,n1,s1)(m2,n2,s2) = (m1 + s1 m2, n1 + s1 n2, s1 s2)
  DeckElement compose(const DeckElement& o) const {
    return {m + sigma * o.m, n + sigma * o.n, sigma * o.sigma};
  }
  DeckElement inverse() const { return {-sigma * m, -sigma * n, sigma}; }
  DeckElement pow(long k) const;

  bool is_identity() const { return m == 0 && n == 0 && sigma == 1; }
  bool operator==(const DeckElement& o) const {
    return m == o.m && n == o.n && sigma == o.sigma;
  }
  bool operator<(const DeckElement& o) const {
    if (m != o.m) return m < o.m;
    if (n != o.n) return n < o.n;
    return sigma < o.sigma;
  }
};

// Canonical fundamental-domain representative, gamma in [0,pi], theta in [0,2pi).
struct PillowPoint {
  double gamma = 0.0;
  double theta = 0.0;
  Vec2 vec() const { return {gamma, theta}; }
};

struct Canonicalized {
  PillowPoint point;
  DeckElement deck;  // deck.apply(point) == input
};

// Total: folds any lift point into the fundamental domain and reports the deck
// element carrying the canonical representative back to the input.
Canonicalized canonicalize(const LiftPoint& p);

// Finite sine series g(x) = sum_k a_k sin(k x); odd and 2pi-periodic by
// construction, so g(pi) = 0 identically.
struct PerturbationFunction {
  std::vector<double> coeffs;  // coeffs[k-1] multiplies sin(k x)

  PerturbationFunction() = default;
  explicit PerturbationFunction(std::vector<double> a) : coeffs(std::move(a)) {}
  static PerturbationFunction zero() { return {}; }
  static PerturbationFunction sine(double amplitude) {
    return PerturbationFunction({amplitude});
  }

  bool is_zero() const;
  double operator()(double x) const;
  double derivative(double x) const;
  PerturbationFunction operator-() const;
};

// A lifted path from front() to closure.apply(front()); the closing vertex is
// stored explicitly as back().
struct LiftedLoop {
  std::vector<Vec2> points;
  DeckElement closure;
};

// The three dual arcs realizing the class z as a crossing count:
//   A1: lines theta - gamma in 2*pi*Z  (interior of the diagonal)
//   A2: lines gamma in pi + 2*pi*Z     (right edge)
//   A3: lines theta in pi + 2*pi*Z     (image of the theta = pi segment)
// Crossing signs carry the fold-parity factor d: the local arc direction is
// reversed on the far side of each lattice point lying on the line, keyed to
// gamma mod 2pi (A1, A3) or theta mod 2pi (A2).
enum class ArcFamily { Diagonal = 0, RightEdge = 1, Equator = 2 };

struct ArcCrossing {
  ArcFamily family;
  int sign;       // orientation test of (d-weighted arc direction, loop direction)
  Vec2 where;
  double along;   // position along the loop, in accumulated edge index
};

// All signed crossings of a lifted loop with the three arc families, in loop
// order.  Throws NonTransverseCrossing if a vertex sits on an arc line or a
// segment runs along one.
std::vector<ArcCrossing> arc_crossings(const LiftedLoop& loop, double tol = kDefaultTol);

// The class z evaluated on a lifted closed path: the signed crossing count
// mod 4.  A small counterclockwise loop around any corner evaluates to 1.
int z_of_loop(const LiftedLoop& loop, double tol = kDefaultTol);

// Corner-cutting jiggle: replaces each vertex by a nearby point on its
// outgoing edge, bounded by the lattice clearance, so vertices move off the
// arc-lift lines.  The result is homotopic to the input in the complement of
// the lattice.
LiftedLoop jiggle_loop(const LiftedLoop& loop, double frac = 0.37);

// z with automatic jiggling when a vertex sits on an arc-lift line.
int z_of_loop_jiggled(const LiftedLoop& loop, double tol = kDefaultTol);

// Free-homotopy invariant of the loop: the cyclically reduced word of its
// arc-crossing letters in pi_1 of the 4-punctured sphere (the three arcs cut
// P* into a disk).  Letters are +-(family+1).
std::vector<int> loop_word(const LiftedLoop& loop, double tol = kDefaultTol);
std::vector<int> cyclic_reduce(std::vector<int> word);
std::vector<int> primitive_root(const std::vector<int>& word);
bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b);

// Planar winding numbers of an identity-closure loop around every lattice
// point in its padded bounding box; zero entries are omitted.  Throws
// NonClosedLoop when the closure is not the identity.
std::map<std::pair<long, long>, int> winding_numbers(const LiftedLoop& loop,
                                                     double tol = kDefaultTol);

// c_g: (gamma, theta) |-> (gamma, theta + s*g(gamma)); commutes with the deck
// action, so closure elements are unchanged.
Vec2 apply_isotopy_cg(const Vec2& p, const PerturbationFunction& g, double s);

// Collar shear of Thm-collar type: (gamma, theta) |-> (gamma, theta + 2 f(gamma + pi)).
Vec2 apply_shear(const Vec2& p, const PerturbationFunction& f);

// (p,q)-shear: (gamma, theta) |-> (gamma - q phi(p gamma + q theta),
//                                  theta + p phi(p gamma + q theta)).
// Requires gcd(p,q) = 1.
Vec2 apply_pq_shear(const Vec2& p0, long p, long q, const PerturbationFunction& phi);

long gcd_long(long a, long b);

}  // namespace pillowfloer
