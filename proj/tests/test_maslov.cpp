#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/maslov.hpp"

using namespace pillowfloer;

namespace {

std::vector<Vec2> parabola(double from, double to, int n = 64) {
  // symmetric sampling around x = 0 keeps the tangency chord exactly
  // horizontal, matching the smooth model the delta-convention resolves
  std::vector<Vec2> p;
  const double h = (to - from) / n;
  for (double x = from; x < to + h / 2; x += h) {
    double xx = x;
    if (std::abs(xx) < h / 4) xx = 0.0;
    p.push_back({xx, xx * xx});
  }
  // a flat chord across the vertex models the horizontal tangent at the
  // start of the rightward branch
  if (std::abs(from) < 1e-12) p.insert(p.begin(), {-h / 2, h * h / 4});
  return p;
}

// convex clockwise polygon on an ellipse, sides as single-segment paths
std::vector<std::vector<Vec2>> convex_cw(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(0, 1);
  while (true) {
    const double a = 0.5 + U(rng), b = 0.5 + U(rng);
    std::vector<double> ang;
    for (int k = 0; k < n; ++k) ang.push_back(U(rng) * kTwoPi);
    std::sort(ang.rbegin(), ang.rend());
    bool spaced = ang.front() - ang.back() < kTwoPi - 0.15;
    for (int k = 0; k + 1 < n; ++k) spaced = spaced && ang[k] - ang[k + 1] > 0.15;
    if (!spaced) continue;
    std::vector<std::vector<Vec2>> paths;
    for (int k = 0; k < n; ++k) {
      const Vec2 c0{a * std::cos(ang[k]), b * std::sin(ang[k])};
      const Vec2 c1{a * std::cos(ang[(k + 1) % n]), b * std::sin(ang[(k + 1) % n])};
      paths.push_back({c0, c1});
    }
    return paths;
  }
}

// star-shaped clockwise polygon with random radii; kappa = reflex corners
std::pair<std::vector<std::vector<Vec2>>, int> star_cw(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> U(0, 1);
  while (true) {
    std::vector<Vec2> c;
    for (int k = 0; k < n; ++k) {
      const double a = -kTwoPi * k / n;
      const double r = 0.5 + 1.2 * U(rng);
      c.push_back({r * std::cos(a), r * std::sin(a)});
    }
    int kappa = 0;
    bool degenerate = false;
    for (int k = 0; k < n; ++k) {
      const Vec2 d1 = c[k] - c[(k + n - 1) % n];
      const Vec2 d2 = c[(k + 1) % n] - c[k];
      const double cr = cross(d1, d2);
      if (std::abs(std::atan2(cr, dot(d1, d2))) > kPi - 0.1) degenerate = true;
      if (std::abs(cr) < 1e-6) degenerate = true;
      if (cr > 0) ++kappa;
    }
    if (degenerate) continue;
    std::vector<std::vector<Vec2>> paths;
    for (int k = 0; k < n; ++k) paths.push_back({c[k], c[(k + 1) % n]});
    return {paths, kappa};
  }
}

// random wavy PL path with gentle turns
std::vector<Vec2> wavy(std::mt19937_64& rng, const Vec2& from, const Vec2& to) {
  std::uniform_real_distribution<double> U(-1, 1);
  std::vector<Vec2> p;
  const int n = 40;
  const Vec2 d = to - from;
  const Vec2 nrm{-d.y, d.x};
  const double a1 = 0.15 * U(rng), a2 = 0.1 * U(rng);
  for (int k = 0; k <= n; ++k) {
    const double t = static_cast<double>(k) / n;
    const double off = a1 * std::sin(kPi * t) + a2 * std::sin(2 * kPi * t);
    p.push_back(from + d * t + nrm * off);
  }
  return p;
}

}  // namespace

TEST_CASE("path Maslov of the parabola against the horizontal field") {
  CHECK(path_maslov(parabola(-1, 1), LineSlope::horizontal()) == 1);
  CHECK(path_maslov(parabola(0, 1), LineSlope::horizontal()) == 1);
  CHECK(path_maslov(parabola(-1, 0), LineSlope::horizontal()) == 0);
  // straight non-slope-one segment against ell_1
  CHECK(path_maslov({{0, 0}, {1, 0.3}}, LineSlope::slope_one()) == 0);
  // reversal negates
  auto rev = parabola(-1, 1);
  std::reverse(rev.begin(), rev.end());
  CHECK(path_maslov(rev, LineSlope::horizontal()) == -1);
}

TEST_CASE("path Maslov rejects non-generic vertices") {
  CHECK_THROWS_AS(path_maslov({{0, 0}, {1, 0}, {0.5, 2.0}}, LineSlope::horizontal()),
                  NonGenericVertex);
}

TEST_CASE("triple index examples and the symmetry identity") {
  const LineSlope h = LineSlope::horizontal(), v = LineSlope::vertical();
  CHECK(triple_index(h, v, LineSlope::slope_one()) == 0);
  CHECK(triple_index(v, h, LineSlope::slope_one()) == 1);
  CHECK_THROWS_AS(triple_index(h, h, LineSlope::slope_one()), EqualLines);

  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> U(0, kPi);
  int done = 0;
  while (done < 1000) {
    const LineSlope a(U(rng)), b(U(rng)), c(U(rng));
    const double s = wrap(a.angle - b.angle, kPi);
    if (s < 1e-3 || s > kPi - 1e-3) continue;
    CHECK(triple_index(a, b, c) + triple_index(b, a, c) == 1);
    ++done;
  }
}

TEST_CASE("n-gon Maslov: convex, star, reversal, cyclic") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 3 + trial % 5;
    auto paths = convex_cw(rng, n);
    CHECK(mas_ngon(paths) == 3 - n);

    // cyclic invariance
    std::vector<std::vector<Vec2>> rot(paths.begin() + 1, paths.end());
    rot.push_back(paths.front());
    CHECK(mas_ngon(rot) == 3 - n);

    // path reversal: Mas(reversed) = 2 - n - Mas
    std::vector<std::vector<Vec2>> rev;
    for (auto it = paths.rbegin(); it != paths.rend(); ++it) {
      auto p = *it;
      std::reverse(p.begin(), p.end());
      rev.push_back(p);
    }
    CHECK(mas_ngon(rev) == 2 - n - (3 - n));
  }
  // Mas = 3 - n + kappa on embedded star polygons
  for (int trial = 0; trial < 250; ++trial) {
    const int n = 4 + trial % 4;
    auto [paths, kappa] = star_cw(rng, n);
    CHECK(mas_ngon(paths) == 3 - n + kappa);
  }
}

TEST_CASE("the shipped 5-gon fixture has Maslov index -1") {
  std::ifstream in(std::string(PILLOWFLOER_FIXTURES) + "/figure_5gon.json");
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  // minimal parse of {"ngon":{"paths":[[[x,y],...],...]}}
  std::vector<std::vector<Vec2>> paths;
  size_t pos = text.find("\"paths\"");
  REQUIRE(pos != std::string::npos);
  pos = text.find('[', pos);
  int depth = 0;
  std::vector<Vec2> cur;
  double num[2];
  int ni = 0;
  std::string buf;
  for (size_t i = pos; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '[') {
      ++depth;
      buf.clear();
      if (depth == 2) cur.clear();
      ni = 0;
    } else if (ch == ',' || ch == ']') {
      if (!buf.empty() && ni < 2) num[ni++] = std::stod(buf);
      buf.clear();
      if (ch == ']') {
        if (depth == 3) cur.push_back({num[0], num[1]});
        if (depth == 2) paths.push_back(cur);
        --depth;
        if (depth == 0) break;
      }
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      buf += ch;
    }
  }
  REQUIRE(paths.size() == 5);
  CHECK(mas_ngon(paths) == -1);
}

TEST_CASE("model bigon has Maslov index 1 from p to q") {
  // lens: L0 lower arc from q to p, L1 upper arc from p to q, clockwise
  std::vector<Vec2> lower, upper;
  for (int k = 0; k <= 24; ++k) {
    const double x = 2.0 - 2.0 * k / 24;
    lower.push_back({x, -0.3 * x * (2 - x)});
  }
  for (int k = 0; k <= 24; ++k) {
    const double x = 2.0 * k / 24;
    upper.push_back({x, 0.3 * x * (2 - x)});
  }
  CHECK(mas_ngon({lower, upper}) == 1);
  for (double ell : {0.0, 0.3, kPi / 4, kPi / 2, 2.2})
    CHECK(mas_ngon({lower, upper}, LineSlope(ell)) == 1);
}

TEST_CASE("splicing: two curves crossing several times") {
  // Mas through (p,q)-paths splits at an intermediate crossing r:
  // Mas(g0, g1) = Mas(g0'', g1') + Mas(g1'', g0') per the splicing identity
  std::mt19937_64 rng(47);
  int done = 0;
  while (done < 300) {
    // two wavy curves from left to right crossing at x=0,1,2 approximately
    auto A = wavy(rng, {-0.5, 0.0}, {2.5, 0.0});
    auto B = wavy(rng, {-0.5, 0.2}, {2.5, -0.2});
    // find crossings by brute force
    std::vector<std::pair<double, double>> xs;  // params in edge units
    for (size_t i = 0; i + 1 < A.size(); ++i)
      for (size_t j = 0; j + 1 < B.size(); ++j) {
        auto h = segment_hit(A[i], A[i + 1], B[j], B[j + 1], 1e-12);
        if (h && !h->degenerate && h->t > 1e-9 && h->t < 1 - 1e-9)
          xs.push_back({i + h->t, j + h->u});
      }
    if (xs.size() < 3) continue;
    std::sort(xs.begin(), xs.end());
    // monotone in both parameters required for clean subpaths
    bool mono = true;
    for (size_t k = 1; k < xs.size(); ++k) mono = mono && xs[k].second > xs[k - 1].second;
    if (!mono) continue;
    auto sub = [](const std::vector<Vec2>& P, double a, double b) {
      std::vector<Vec2> out;
      auto pt = [&](double u) {
        const int i = std::min(static_cast<int>(u), static_cast<int>(P.size()) - 2);
        const double f = u - i;
        return P[i] * (1 - f) + P[i + 1] * f;
      };
      out.push_back(pt(a));
      if (a < b)
        for (int i = static_cast<int>(a) + 1; i <= static_cast<int>(b); ++i) out.push_back(P[i]);
      else
        for (int i = static_cast<int>(a); i > static_cast<int>(b); --i) out.push_back(P[i]);
      out.push_back(pt(b));
      return out;
    };
    const auto [a0, b0] = xs[0];
    const auto [a1, b1] = xs[1];
    const auto [a2, b2] = xs[2];
    // 2-gon from p=xs[0] to q=xs[2] with paths through r=xs[1]
    int whole, part1, part2;
    try {
      whole = mas_ngon({sub(A, a2, a0), sub(B, b0, b2)});
      part1 = mas_ngon({sub(A, a1, a0), sub(B, b0, b1)});
      part2 = mas_ngon({sub(A, a2, a1), sub(B, b1, b2)});
    } catch (const Error&) {
      continue;
    }
    // splicing at the middle point: Mas(whole) = Mas(part1) + Mas(part2)
    CHECK(whole == part1 + part2);
    ++done;
  }
}
