#include "pillowfloer/pillowcase.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pillowfloer/errors.hpp"

namespace pillowfloer {

long gcd_long(long a, long b) {
  a = std::labs(a);
  b = std::labs(b);
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

double lattice_distance(const Vec2& p) {
  const double dx = p.x - kPi * std::round(p.x / kPi);
  const double dy = p.y - kPi * std::round(p.y / kPi);
  return std::hypot(dx, dy);
}

bool is_corner_lift(const LiftPoint& p, double tol) {
  return lattice_distance(p.vec()) < tol;
}

DeckElement DeckElement::pow(long k) const {
  DeckElement r = identity();
  DeckElement base = k >= 0 ? *this : inverse();
  for (long i = 0; i < std::labs(k); ++i) r = r.compose(base);
  return r;
}

Canonicalized canonicalize(const LiftPoint& p) {
  double g = wrap(p.gamma, kTwoPi);
  int sigma = 1;
  if (g > kPi) {
    sigma = -1;
    g = kTwoPi - g;
  }
  const double t = wrap(sigma * p.theta, kTwoPi);
  Canonicalized c;
  c.point = {g, t};
  // solve deck.apply(point) == p
  c.deck.sigma = sigma;
  c.deck.m = std::lround((p.gamma - sigma * g) / kTwoPi);
  c.deck.n = std::lround((p.theta - sigma * t) / kTwoPi);
  return c;
}

bool PerturbationFunction::is_zero() const {
  for (double a : coeffs)
    if (a != 0) return false;
  return true;
}

double PerturbationFunction::operator()(double x) const {
  double s = 0;
  for (size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * std::sin((k + 1) * x);
  return s;
}

double PerturbationFunction::derivative(double x) const {
  double s = 0;
  for (size_t k = 0; k < coeffs.size(); ++k) s += coeffs[k] * (k + 1) * std::cos((k + 1) * x);
  return s;
}

PerturbationFunction PerturbationFunction::operator-() const {
  PerturbationFunction r = *this;
  for (double& a : r.coeffs) a = -a;
  return r;
}

namespace {

// Crossings of one segment with the level set {value = lev} of a linear
// functional; f(a), f(b) are the endpoint values.
struct LevelCrossing {
  double t;      // parameter along the segment
  double level;  // which line of the family
};

void levels_between(double fa, double fb, double spacing, double offset, double tol,
                    std::vector<LevelCrossing>* out) {
  if (std::abs(fa - fb) < 1e-300) return;
  const double lo = std::min(fa, fb), hi = std::max(fa, fb);
  long k0 = static_cast<long>(std::ceil((lo - offset) / spacing - 1e-12));
  long k1 = static_cast<long>(std::floor((hi - offset) / spacing + 1e-12));
  for (long k = k0; k <= k1; ++k) {
    const double lev = offset + spacing * k;
    if (std::abs(fa - lev) < tol || std::abs(fb - lev) < tol)
      throw NonTransverseCrossing("vertex on arc-lift line");
    if ((fa < lev) == (fb < lev)) continue;
    out->push_back({(lev - fa) / (fb - fa), lev});
  }
}

int fold_parity(double key) {
  // +1 on (0,pi) mod 2pi, -1 on (pi,2pi): the arc-lift direction reverses
  // across each lattice point on the line
  const double w = wrap(key, kTwoPi);
  return w < kPi ? 1 : -1;
}

}  // namespace

std::vector<ArcCrossing> arc_crossings(const LiftedLoop& loop, double tol) {
  std::vector<ArcCrossing> out;
  const auto& P = loop.points;
  if (P.size() < 2) return out;
  for (size_t i = 0; i + 1 < P.size(); ++i) {
    const Vec2 a = P[i], b = P[i + 1];
    const Vec2 d = b - a;
    std::vector<LevelCrossing> hits;

    // A1: theta - gamma in 2 pi Z
    hits.clear();
    levels_between(a.y - a.x, b.y - b.x, kTwoPi, 0.0, tol, &hits);
    for (const auto& h : hits) {
      const Vec2 w = a + h.t * d;
      if (lattice_distance(w) < tol) throw NonTransverseCrossing("crossing at lattice point");
      const int dd = fold_parity(w.x);
      const int sign = (d.y - d.x) * dd > 0 ? 1 : -1;
      out.push_back({ArcFamily::Diagonal, sign, w, static_cast<double>(i) + h.t});
    }
    // A2: gamma in pi + 2 pi Z
    hits.clear();
    levels_between(a.x, b.x, kTwoPi, kPi, tol, &hits);
    for (const auto& h : hits) {
      const Vec2 w = a + h.t * d;
      if (lattice_distance(w) < tol) throw NonTransverseCrossing("crossing at lattice point");
      const int dd = fold_parity(w.y);
      const int sign = (-d.x) * dd > 0 ? 1 : -1;
      out.push_back({ArcFamily::RightEdge, sign, w, static_cast<double>(i) + h.t});
    }
    // A3: theta in pi + 2 pi Z
    hits.clear();
    levels_between(a.y, b.y, kTwoPi, kPi, tol, &hits);
    for (const auto& h : hits) {
      const Vec2 w = a + h.t * d;
      if (lattice_distance(w) < tol) throw NonTransverseCrossing("crossing at lattice point");
      const int dd = fold_parity(w.x);
      const int sign = d.y * dd > 0 ? 1 : -1;
      out.push_back({ArcFamily::Equator, sign, w, static_cast<double>(i) + h.t});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const ArcCrossing& x, const ArcCrossing& y) { return x.along < y.along; });
  return out;
}

int z_of_loop(const LiftedLoop& loop, double tol) {
  if (loop.points.size() < 2) return 0;
  const Vec2 expect = loop.closure.apply(loop.points.front());
  if (dist(expect, loop.points.back()) > 1e-6)
    throw NonClosedLoop("loop endpoints do not match the closure element");
  int total = 0;
  for (const auto& c : arc_crossings(loop, tol)) total += c.sign;
  return ((total % 4) + 4) % 4;
}

LiftedLoop jiggle_loop(const LiftedLoop& loop, double frac) {
  LiftedLoop out;
  out.closure = loop.closure;
  const auto& P = loop.points;
  const size_t n = P.size();
  if (n < 3) return loop;
  out.points.reserve(n);
  for (size_t i = 0; i + 1 < n; ++i) {
    const Vec2 d = P[i + 1] - P[i];
    const double len = norm(d);
    double f = frac;
    const double clearance = lattice_distance(P[i]);
    if (len > 0) f = std::min(f, 0.1 * clearance / len);
    out.points.push_back(P[i] + d * f);
  }
  out.points.push_back(loop.closure.apply(out.points.front()));
  return out;
}

int z_of_loop_jiggled(const LiftedLoop& loop, double tol) {
  for (double f : {0.0, 0.37, 0.23, 0.51}) {
    try {
      return z_of_loop(f == 0.0 ? loop : jiggle_loop(loop, f), tol);
    } catch (const NonTransverseCrossing&) {
      continue;
    }
  }
  throw NonTransverseCrossing("loop could not be jiggled off the arc-lift lines");
}

std::vector<int> loop_word(const LiftedLoop& loop, double tol) {
  for (double f : {0.0, 0.37, 0.23, 0.51}) {
    try {
      std::vector<int> w;
      for (const auto& c : arc_crossings(f == 0.0 ? loop : jiggle_loop(loop, f), tol))
        w.push_back(c.sign * (static_cast<int>(c.family) + 1));
      return cyclic_reduce(w);
    } catch (const NonTransverseCrossing&) {
      continue;
    }
  }
  throw NonTransverseCrossing("loop could not be jiggled off the arc-lift lines");
}

std::vector<int> cyclic_reduce(std::vector<int> word) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<int> r;
    for (int x : word) {
      if (!r.empty() && r.back() == -x) {
        r.pop_back();
        changed = true;
      } else {
        r.push_back(x);
      }
    }
    while (r.size() >= 2 && r.front() == -r.back()) {
      r.erase(r.begin());
      r.pop_back();
      changed = true;
    }
    word = std::move(r);
  }
  return word;
}

std::vector<int> primitive_root(const std::vector<int>& word) {
  const size_t n = word.size();
  for (size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool ok = true;
    for (size_t i = d; i < n && ok; ++i) ok = word[i] == word[i - d];
    if (ok) return std::vector<int>(word.begin(), word.begin() + d);
  }
  return word;
}

bool cyclic_equal(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const size_t n = a.size();
  for (size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (size_t i = 0; i < n && ok; ++i) ok = a[i] == b[(i + s) % n];
    if (ok) return true;
  }
  return false;
}

std::map<std::pair<long, long>, int> winding_numbers(const LiftedLoop& loop, double tol) {
  if (!loop.closure.is_identity())
    throw NonClosedLoop("winding numbers need an identity-closure loop");
  if (loop.points.size() < 2 || dist(loop.points.front(), loop.points.back()) > 1e-6)
    throw NonClosedLoop("loop endpoints do not match");

  std::map<std::pair<long, long>, int> out;
  BBox b = bbox_of(loop.points);
  b.pad(tol);
  // closed polyline without the repeated endpoint
  std::vector<Vec2> closed(loop.points.begin(), loop.points.end() - 1);
  for (long i = static_cast<long>(std::floor(b.lo.x / kPi)); i <= std::ceil(b.hi.x / kPi); ++i) {
    for (long j = static_cast<long>(std::floor(b.lo.y / kPi)); j <= std::ceil(b.hi.y / kPi); ++j) {
      const Vec2 p{kPi * i, kPi * j};
      const int w = winding_number(closed, p);
      if (w != 0) out[{i, j}] = w;
    }
  }
  return out;
}

Vec2 apply_isotopy_cg(const Vec2& p, const PerturbationFunction& g, double s) {
  return {p.x, p.y + s * g(p.x)};
}

Vec2 apply_shear(const Vec2& p, const PerturbationFunction& f) {
  return {p.x, p.y + 2.0 * f(p.x + kPi)};
}

Vec2 apply_pq_shear(const Vec2& p0, long p, long q, const PerturbationFunction& phi) {
  if (gcd_long(p, q) != 1) throw NonCoprime("apply_pq_shear requires gcd(p,q)=1");
  const double v = phi(p * p0.x + q * p0.y);
  return {p0.x - q * v, p0.y + p * v};
}

}  // namespace pillowfloer
