// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  F2 rank targets are exact; geometric residual tolerances are
// stated inline.

#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/json_io.hpp"
#include "pillowfloer/knots.hpp"
#include "pillowfloer/maslov.hpp"

using namespace pillowfloer;

namespace {

int failures = 0;

void report(int idx, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("[%2d] %-64s %s%s%s\n", idx, name.c_str(), ok ? "PASS" : "FAIL",
              detail.empty() ? "" : "  -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

GradedRanks ranks(int a, int b, int c, int d) {
  GradedRanks r;
  r.n = {a, b, c, d};
  return r;
}

const std::string kFixtures = PILLOWFLOER_FIXTURES;

LiftedCurve re1_fixture() { return load_curves(kFixtures + "/figure_re1.json")[0]; }

struct TorusFixture {
  TorusSpec spec;
  GradedRanks homology;
};

// perturbation regimes pinned per fixture; (3,4) and (4,7) need epsB != 0 to
// break the v-coefficient parity symmetry of their Psi systems
const TorusFixture kTorusTable[] = {
    {TorusSpec(3, 7, 5, -2, 0.01, 0.0), ranks(3, 2, 2, 2)},
    {TorusSpec(5, 7, 3, -2, 0.01, 0.0), ranks(5, 4, 4, 4)},
    {TorusSpec(5, 12, 5, -2, 0.01, 0.0), ranks(8, 7, 7, 7)},
    {TorusSpec(5, 17, 7, -2, 0.01, 0.0), ranks(11, 10, 10, 10)},
    {TorusSpec(3, 4, 3, -2, 0.01, 0.005), ranks(2, 1, 1, 1)},
    {TorusSpec(3, 5, 2, -1, 0.01, 0.0), ranks(2, 1, 2, 2)},
    {TorusSpec(4, 5, 4, -3, 0.01, 0.0), ranks(2, 1, 2, 2)},
    {TorusSpec(4, 7, 2, -1, 0.01, 0.005), ranks(3, 2, 3, 3)},
    {TorusSpec(5, 11, 9, -4, 0.01, 0.0), ranks(5, 4, 4, 4)},
};

void crit1_two_bridge() {
  bool ok = true;
  std::string detail;
  const std::pair<std::pair<long, long>, GradedRanks> table[] = {
      {{3, -1}, ranks(1, 0, 1, 1)}, {{3, 2}, ranks(1, 0, 1, 1)},
      {{5, -3}, ranks(1, 1, 2, 1)}, {{5, 2}, ranks(1, 1, 2, 1)},
      {{11, -5}, ranks(3, 2, 3, 3)}, {{11, 6}, ranks(3, 2, 3, 3)},
  };
  for (const auto& [pq, want] : table) {
    const TwoBridgeSpec spec(pq.first, pq.second);
    const auto exact = two_bridge_complex(spec);
    const bool this_ok = exact.ranks() == want &&
                         exact.generators.size() == static_cast<size_t>(pq.first);
    // the exact complex has zero differential by construction; confirm the
    // generic pipeline agrees with rank p and no bigons
    const LiftedCurve L0 = figure_eight(0.1, {});
    const auto cx = build_complex(L0, {two_bridge_curve(spec)}, exact.signature);
    const bool generic_ok = cx.rank() == pq.first && cx.differential_rank() == 0 &&
                            homology(cx) == want;
    if (!(this_ok && generic_ok)) {
      ok = false;
      detail += "K(" + std::to_string(pq.first) + "," + std::to_string(pq.second) + ") got " +
                exact.ranks().str() + "/" + homology(cx).str() + " ";
    }
  }
  report(1, "2-bridge golden table, exact arithmetic, zero differential", ok, detail);
}

void crit2_running_example() {
  const LiftedCurve L0 = figure_eight(0.1, {});
  const LiftedCurve re1 = re1_fixture();
  const auto cx = build_complex(L0, {re1});
  bool ok = cx.components.size() == 1;
  std::string detail;
  if (ok) {
    const auto& comp = cx.components[0];
    ok = comp.generators.size() == 8 && comp.chain_ranks() == ranks(2, 2, 2, 2) &&
         comp.bigons.size() == 2;
    // two bigons on disjoint generator pairs: d p = q and d v = w
    std::set<int> touched;
    for (const auto& b : comp.bigons) {
      touched.insert(b.from);
      touched.insert(b.to);
    }
    ok = ok && touched.size() == 4 && homology(cx) == ranks(1, 1, 1, 1);
    detail = "8 gens, C=" + comp.chain_ranks().str() + ", bigons=" +
             std::to_string(comp.bigons.size()) + ", H=" + homology(cx).str();
  }
  report(2, "running example: C=(2,2,2,2), two bigons, H=(1,1,1,1)", ok, detail);
}

void crit3_torus_table() {
  bool ok = true;
  std::string detail;
  for (const auto& fx : kTorusTable) {
    TorusKnotReport rep;
    try {
      rep = torus_knot_homology(fx.spec);
    } catch (const Error& e) {
      ok = false;
      detail += "T(" + std::to_string(fx.spec.p) + "," + std::to_string(fx.spec.q) +
                ") threw: " + e.what() + " ";
      continue;
    }
    bool this_ok = rep.total_homology == fx.homology;
    int bigons = 0, arc_bigons = 0, arc_gens = 0;
    for (const auto& c : rep.complex.components) {
      bigons += static_cast<int>(c.bigons.size());
      if (c.kind == CurveKind::Arc) {
        arc_bigons += static_cast<int>(c.bigons.size());
        arc_gens = static_cast<int>(c.generators.size());
      }
    }
    const long p = fx.spec.p, q = fx.spec.q;
    if (p == 5 && q == 7) this_ok = this_ok && rep.complex.differential_rank() == 0;
    if (p == 3 && q == 4) this_ok = this_ok && bigons == 1;
    if (p == 3 && q == 5) {
      // chain (3,2,2,2) with the bigon hitting the canonical generator
      this_ok = this_ok && rep.complex.chain_ranks() == ranks(3, 2, 2, 2) && bigons == 1;
      for (const auto& c : rep.complex.components)
        for (const auto& b : c.bigons) {
          // d x1- = r+^eps: the target is the generator anchored at sigma
          this_ok = this_ok && b.to == c.grading.anchor_generator;
        }
    }
    if (p == 4 && q == 5) {
      // the single bigon does not touch r_+^eps
      this_ok = this_ok && bigons == 1;
      for (const auto& c : rep.complex.components)
        for (const auto& b : c.bigons)
          this_ok = this_ok && b.from != c.grading.anchor_generator &&
                    b.to != c.grading.anchor_generator;
    }
    if (p == 4 && q == 7) this_ok = this_ok && arc_gens == 7 && arc_bigons == 2;
    if (p == 5 && q == 11)
      this_ok = this_ok && rep.complex.rank() == 25 && rep.complex.differential_rank() == 4;
    if (!this_ok) {
      ok = false;
      detail += "T(" + std::to_string(p) + "," + std::to_string(q) + ") H=" +
                rep.total_homology.str() + " chain=" + rep.complex.chain_ranks().str() + " ";
    }
  }
  report(3, "torus-knot golden table (continuation + Floer)", ok, detail);
}

void crit4_component_structure() {
  bool ok = true;
  std::string detail;
  auto census = [](const TorusSpec& spec, int* arcs, int* circles,
                   std::vector<const CharVarietyComponent*>* comps,
                   TraceResult* out) {
    TraceOptions opt;
    *out = trace_character_variety(spec, opt);
    *arcs = 0;
    *circles = 0;
    for (const auto& c : out->components) {
      (c.kind == ComponentKind::ArcComponent ? *arcs : *circles)++;
      comps->push_back(&c);
    }
  };
  {
    TraceResult tr;
    int a, c;
    std::vector<const CharVarietyComponent*> comps;
    census(TorusSpec(3, 7, 5, -2, 0.01, 0.0), &a, &c, &comps, &tr);
    if (!(a == 1 && c == 2)) {
      ok = false;
      detail += "(3,7): " + std::to_string(a) + "+" + std::to_string(c) + " ";
    }
  }
  {
    TraceResult tr;
    int a, c;
    std::vector<const CharVarietyComponent*> comps;
    census(TorusSpec(5, 7, 3, -2, 0.01, 0.0), &a, &c, &comps, &tr);
    bool d8 = false;
    for (const auto* cc : comps)
      if (cc->kind == ComponentKind::CircleComponent &&
          vertical_degree(cc->pillow_trace) == 8)
        d8 = true;
    if (!(a == 1 && c == 1 && d8)) {
      ok = false;
      detail += "(5,7) ";
    }
  }
  {
    TraceResult tr;
    int a, c;
    std::vector<const CharVarietyComponent*> comps;
    census(TorusSpec(5, 11, 9, -4, 0.01, 0.0), &a, &c, &comps, &tr);
    int d2 = 0, re1like = 0;
    const LiftedCurve L0 = figure_eight(0.1, {});
    for (const auto* cc : comps) {
      if (cc->kind != ComponentKind::CircleComponent) continue;
      // degree-2 circles stay in one vertical strip (closure m = 0); the
      // running-example circles wind diagonally with closure (2,2)
      if (cc->pillow_trace.closure.m == 0 && vertical_degree(cc->pillow_trace) == 2) {
        ++d2;
        continue;
      }
      // running-example invariants: z = 0, mu = 0, 8 intersections, two
      // bigons, homology (1,1,1,1)
      const auto rr = check_restricted(cc->pillow_trace);
      const auto cx = build_complex(L0, {cc->pillow_trace});
      if (rr.ok && rr.z == 0 && rr.mu == 0 && cx.components[0].generators.size() == 8 &&
          cx.components[0].bigons.size() == 2 && homology(cx) == ranks(1, 1, 1, 1))
        ++re1like;
    }
    if (!(a == 1 && c == 4 && d2 == 2 && re1like == 2)) {
      ok = false;
      detail += "(5,11): arcs=" + std::to_string(a) + " circles=" + std::to_string(c) +
                " d2=" + std::to_string(d2) + " re1like=" + std::to_string(re1like) + " ";
    }
  }
  {
    TraceOptions opt;
    const auto res = trace_character_variety(TorusSpec(3, 4, 3, -2, 0.0, 0.0), opt);
    bool two_vertices = res.singularities.size() >= 2;
    bool located = false;
    for (const auto& s : res.singularities)
      if (std::abs(s.where.u - kPi / 6) < 1e-3 || std::abs(s.where.u - 5 * kPi / 6) < 1e-3)
        located = true;
    if (!(two_vertices && located)) {
      ok = false;
      detail += "(3,4) eps=0 diagnostics missing ";
    }
  }
  report(4, "component structure: (3,7),(5,7),(5,11); (3,4) phi diagnostic", ok, detail);
}

void crit5_rank_alexander() {
  bool ok = true;
  std::string detail;
  for (const auto& fx : kTorusTable) {
    const long want = alexander_abs_sum_torus(fx.spec.p, fx.spec.q);
    if (fx.homology.total() != want) {
      ok = false;
      detail += "T(" + std::to_string(fx.spec.p) + "," + std::to_string(fx.spec.q) + ") ";
    }
    TorusKnotReport rep = torus_knot_homology(fx.spec);
    if (rep.total_homology.total() != want) {
      ok = false;
      detail += "computed T(" + std::to_string(fx.spec.p) + "," + std::to_string(fx.spec.q) +
                ")=" + std::to_string(rep.total_homology.total()) + " want " +
                std::to_string(want) + " ";
    }
  }
  report(5, "homology rank equals the Alexander |coefficient| sum", ok, detail);
}

void crit6_invariance() {
  bool ok = true;
  std::string detail;

  // eps and g sweeps on the running example and two 2-bridge fixtures
  {
    const LiftedCurve re1 = re1_fixture();
    for (double eps : {0.05, 0.1, 0.2})
      for (double amp : {0.0, 0.05}) {
        const LiftedCurve L0 = figure_eight(eps, PerturbationFunction::sine(amp));
        const auto h = homology(build_complex(L0, {re1}));
        if (!(h == ranks(1, 1, 1, 1))) {
          ok = false;
          detail += "re1@" + std::to_string(eps) + " ";
        }
      }
    for (auto [p, q] : {std::pair<long, long>{11, -5}, {5, -3}}) {
      const TwoBridgeSpec spec(p, q);
      const auto want = two_bridge_complex(spec).ranks();
      for (double eps : {0.05, 0.1, 0.2})
        for (double amp : {0.0, 0.05}) {
          const LiftedCurve L0 = figure_eight(eps, PerturbationFunction::sine(amp));
          const auto h =
              homology(build_complex(L0, {two_bridge_curve(spec)}, signature_two_bridge(spec)));
          if (!(h == want)) {
            ok = false;
            detail += "K(" + std::to_string(p) + ")@" + std::to_string(eps) + " ";
          }
        }
    }
  }

  // torus fixtures: traced curves are fixed, L0 varies
  for (const auto& fx : kTorusTable) {
    TraceOptions opt;
    const auto tr = trace_character_variety(fx.spec, opt);
    std::vector<LiftedCurve> comps;
    for (const auto& c : tr.components) comps.push_back(c.pillow_trace);
    const int sig = signature_torus(fx.spec.p, fx.spec.q);
    for (double eps : {0.05, 0.1, 0.2}) {
      for (double amp : {0.0, 0.05}) {
        GradedRanks h;
        try {
          const LiftedCurve L0 = figure_eight(eps, PerturbationFunction::sine(amp));
          h = homology(build_complex(L0, comps, sig));
        } catch (const NonTransverse&) {
          continue;  // transversality fails for this (eps, g); skip per spec
        }
        if (!(h == fx.homology)) {
          ok = false;
          detail += "T(" + std::to_string(fx.spec.p) + "," + std::to_string(fx.spec.q) + ")@eps=" +
                    std::to_string(eps) + ",g=" + std::to_string(amp) + "->" + h.str() + " ";
        }
      }
    }
  }

  // (3,5) cancellation: eps = 0.2, epsA = 0.1 leaves exactly 7 generators.
  // The widened figure eight swallows the pair (r_+^eps, x_1^-), so the
  // distinguished anchor generator is gone; the homology is unchanged as a
  // relatively Z/4 graded group, i.e. up to a cyclic grading rotation.
  {
    const auto rep = torus_knot_homology(TorusSpec(3, 5, 2, -1, 0.1, 0.0), 0.2);
    bool cyc = false;
    for (int r = 0; r < 4; ++r) {
      GradedRanks rot;
      for (int i = 0; i < 4; ++i) rot.n[(i + r) % 4] = ranks(2, 1, 2, 2).n[i];
      cyc = cyc || rep.total_homology == rot;
    }
    if (!(rep.complex.rank() == 7 && cyc)) {
      ok = false;
      detail += "(3,5) cancellation: rank=" + std::to_string(rep.complex.rank()) + " H=" +
                rep.total_homology.str() + " ";
    }
  }
  report(6, "eps/g invariance; (3,5) cancellation to 7 generators", ok, detail);
}

void crit7_index_properties() {
  bool ok = true;
  std::string detail;
  std::mt19937_64 rng(1009);
  std::uniform_real_distribution<double> U(0, 1);

  // tau identity, 1000 cases
  {
    int done = 0;
    while (done < 1000) {
      const LineSlope a(U(rng) * kPi), b(U(rng) * kPi), c(U(rng) * kPi);
      const double s = wrap(a.angle - b.angle, kPi);
      if (s < 1e-3 || s > kPi - 1e-3) continue;
      if (triple_index(a, b, c) + triple_index(b, a, c) != 1) ok = false;
      ++done;
    }
    if (!ok) detail += "tau ";
  }

  // Maslov identities on random polygons, 1000 cases
  {
    auto convex = [&](int n) {
      while (true) {
        const double a = 0.5 + U(rng), b2 = 0.5 + U(rng);
        std::vector<double> ang;
        for (int k = 0; k < n; ++k) ang.push_back(U(rng) * kTwoPi);
        std::sort(ang.rbegin(), ang.rend());
        bool sp = ang.front() - ang.back() < kTwoPi - 0.15;
        for (int k = 0; k + 1 < n; ++k) sp = sp && ang[k] - ang[k + 1] > 0.15;
        if (!sp) continue;
        std::vector<std::vector<Vec2>> paths;
        for (int k = 0; k < n; ++k)
          paths.push_back({{a * std::cos(ang[k]), b2 * std::sin(ang[k])},
                           {a * std::cos(ang[(k + 1) % n]), b2 * std::sin(ang[(k + 1) % n])}});
        return paths;
      }
    };
    bool mas_ok = true;
    for (int t = 0; t < 1000; ++t) {
      const int n = 3 + t % 5;
      auto paths = convex(n);
      if (mas_ngon(paths) != 3 - n) mas_ok = false;
      std::vector<std::vector<Vec2>> rot(paths.begin() + 1, paths.end());
      rot.push_back(paths.front());
      if (mas_ngon(rot) != 3 - n) mas_ok = false;
      std::vector<std::vector<Vec2>> rev;
      for (auto it = paths.rbegin(); it != paths.rend(); ++it) {
        auto p = *it;
        std::reverse(p.begin(), p.end());
        rev.push_back(p);
      }
      if (mas_ngon(rev) != 2 - n - (3 - n)) mas_ok = false;
    }
    if (!mas_ok) {
      ok = false;
      detail += "mas ";
    }
  }

  // grading identities + differential properties on computed complexes
  {
    const LiftedCurve L0 = figure_eight(0.1, {});
    const LiftedCurve re1 = re1_fixture();
    const auto gens = intersections(L0, re1);
    bool gr_ok = true;
    for (size_t i = 0; i < gens.size(); ++i) {
      if (relative_grading(gens[i], gens[i], L0, re1) != 0) gr_ok = false;
      for (size_t j = 0; j < gens.size(); ++j) {
        const int gij = relative_grading(gens[i], gens[j], L0, re1);
        const int gji = relative_grading(gens[j], gens[i], L0, re1);
        if (mod4(gij + gji) != 0) gr_ok = false;
        for (size_t k = 0; k < gens.size(); k += 2) {
          if (mod4(gij + relative_grading(gens[j], gens[k], L0, re1)) !=
              relative_grading(gens[i], gens[k], L0, re1))
            gr_ok = false;
        }
      }
    }
    // d lowers grading by exactly 1, d^2 = 0, bigon ends have gr = 1
    for (const auto& fx : {std::pair<LiftedCurve, int>{re1, 0}}) {
      const auto cx = build_complex(L0, {fx.first});
      for (const auto& comp : cx.components)
        for (const auto& b : comp.bigons)
          if (mod4(comp.grading.grading[b.from] - comp.grading.grading[b.to]) != 1) gr_ok = false;
      homology(cx);  // throws if d^2 != 0
    }
    if (!gr_ok) {
      ok = false;
      detail += "grading ";
    }
  }
  report(7, "index property suites (1000 random cases each)", ok, detail);
}

void crit8_numerical_kernels() {
  bool ok = true;
  std::string detail;

  // Jacobian vs central differences: max relative error < 1e-6, 1000 points
  {
    const TorusSpec sp(3, 5, 2, -1, 0.013, 0.007);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> T(-0.95, 0.95);
    double maxrel = 0;
    for (int i = 0; i < 1000; ++i) {
      const double u = U(rng), v = U(rng), t = T(rng);
      const auto J = psi_jacobian(sp, u, v, t);
      const double h = 1e-6;
      auto at = [&](double du, double dv, double dt, double dA, double dB) {
        TorusSpec s2 = sp;
        s2.epsA += dA;
        s2.epsB += dB;
        return psi(s2, u + du, v + dv, t + dt);
      };
      const double fd[5][2] = {
          {(at(0, 0, 0, h, 0)[0] - at(0, 0, 0, -h, 0)[0]) / (2 * h),
           (at(0, 0, 0, h, 0)[1] - at(0, 0, 0, -h, 0)[1]) / (2 * h)},
          {(at(0, 0, 0, 0, h)[0] - at(0, 0, 0, 0, -h)[0]) / (2 * h),
           (at(0, 0, 0, 0, h)[1] - at(0, 0, 0, 0, -h)[1]) / (2 * h)},
          {(at(h, 0, 0, 0, 0)[0] - at(-h, 0, 0, 0, 0)[0]) / (2 * h),
           (at(h, 0, 0, 0, 0)[1] - at(-h, 0, 0, 0, 0)[1]) / (2 * h)},
          {(at(0, h, 0, 0, 0)[0] - at(0, -h, 0, 0, 0)[0]) / (2 * h),
           (at(0, h, 0, 0, 0)[1] - at(0, -h, 0, 0, 0)[1]) / (2 * h)},
          {(at(0, 0, h, 0, 0)[0] - at(0, 0, -h, 0, 0)[0]) / (2 * h),
           (at(0, 0, h, 0, 0)[1] - at(0, 0, -h, 0, 0)[1]) / (2 * h)}};
      for (int c = 0; c < 5; ++c)
        for (int r = 0; r < 2; ++r)
          maxrel =
              std::max(maxrel, std::abs(J[r][c] - fd[c][r]) / std::max(1.0, std::abs(J[r][c])));
    }
    if (maxrel >= 1e-6) {
      ok = false;
      detail += "jacobian maxrel=" + std::to_string(maxrel) + " ";
    }
  }

  // all continuation samples below 1e-10 residual
  {
    for (const auto& spec : {TorusSpec(3, 7, 5, -2, 0.01, 0.0), TorusSpec(3, 5, 2, -1, 0.01, 0.0)}) {
      TraceOptions opt;
      const auto tr = trace_character_variety(spec, opt);
      for (const auto& c : tr.components)
        if (c.max_residual >= 1e-10) {
          ok = false;
          detail += "residual " + std::to_string(c.max_residual) + " ";
        }
    }
  }

  // (3,7) arc projection within 1e-6 of t -> (t, 2t)
  {
    TraceOptions opt;
    const auto tr = trace_character_variety(TorusSpec(3, 7, 5, -2, 0.0, 0.0), opt);
    double maxdev = 1e9;
    for (const auto& c : tr.components) {
      if (c.kind != ComponentKind::ArcComponent) continue;
      const auto& v = c.pillow_trace.vertices;
      maxdev = 0;
      for (const auto& p : v)
        maxdev = std::max(maxdev,
                          std::abs((p.y - v.front().y) - 2 * (p.x - v.front().x)));
    }
    if (maxdev >= 1e-6) {
      ok = false;
      detail += "(3,7) slope-2 dev=" + std::to_string(maxdev) + " ";
    }
  }
  report(8, "numerical kernels: Jacobian, residuals < 1e-10, slope-2 arc", ok, detail);
}

void crit9_z_self_test() {
  bool ok = true;
  std::string detail;
  for (double cg : {0.0, kPi})
    for (double ct : {0.0, kPi}) {
      LiftedLoop l;
      for (int k = 0; k <= 48; ++k) {
        const double a = 0.13 + kPi * k / 48;
        l.points.push_back({cg + 0.2 * std::cos(a), ct + 0.2 * std::sin(a)});
      }
      l.closure = DeckElement{std::lround(cg / kPi), std::lround(ct / kPi), -1};
      if (z_of_loop(l) != 1) {
        ok = false;
        detail += "corner ";
      }
    }
  {
    LiftedLoop l;
    for (int k = 0; k <= 64; ++k) {
      const double a = kTwoPi * k / 64;
      l.points.push_back({1.3 + 0.2 * std::cos(a), 0.8 + 0.2 * std::sin(a)});
    }
    l.points.back() = l.points.front();
    l.closure = DeckElement::identity();
    if (z_of_loop(l) != 0) {
      ok = false;
      detail += "contractible ";
    }
  }
  for (double amp : {0.0, 0.05})
    if (z_of_loop_jiggled(circle_loop(figure_eight(0.1, PerturbationFunction::sine(amp)))) != 0) {
      ok = false;
      detail += "L0 ";
    }
  if (z_of_loop_jiggled(circle_loop(re1_fixture())) != 0) {
    ok = false;
    detail += "re1 ";
  }
  if (z_of_loop_jiggled(circle_loop(load_curves(kFixtures + "/figure_re1.json")[0])) != 0) {
    ok = false;
    detail += "re1-z ";
  }
  // z against winding sums for identity-closure loops.  The corner
  // normalization z(corner loop) = 1 forces z = 2 * sum(windings): the
  // branched cover is 2-1, so a lift winding once around a lattice point
  // projects to a loop circling the corner twice.  The spec's stated factor
  // of one is inconsistent with its own corner self-test; see the decisions
  // ledger.
  {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0, 1);
    int tested = 0;
    while (tested < 60) {
      const double cx = U(rng) * kTwoPi, cy = U(rng) * kTwoPi;
      const double r1 = 0.3 + 2.0 * U(rng), r2 = 0.7 * U(rng);
      LiftedLoop l;
      bool bad = false;
      for (int k = 0; k <= 160; ++k) {
        const double a = kTwoPi * k / 160;
        const Vec2 p{cx + r1 * std::cos(a) + r2 * std::cos(2 * a),
                     cy + r1 * std::sin(a) - r2 * std::sin(3 * a)};
        if (lattice_distance(p) < 1e-3) bad = true;
        l.points.push_back(p);
      }
      if (bad) continue;
      l.points.back() = l.points.front();
      l.closure = DeckElement::identity();
      int zv;
      try {
        zv = z_of_loop(l);
      } catch (const NonTransverseCrossing&) {
        continue;
      }
      long ws = 0;
      for (const auto& [pt, w] : winding_numbers(l)) ws += w;
      if (zv != ((2 * ws % 4) + 4) % 4) {
        ok = false;
        detail += "winding ";
      }
      ++tested;
    }
  }
  report(9, "z self-test: corners 1, contractible 0, z(L0)=0, z = 2*windings", ok, detail);
}

void crit10_signatures() {
  bool ok = signature_two_bridge(TwoBridgeSpec(11, -5)) == 2 && signature_torus(3, 4) == -6 &&
            signature_torus(3, 5) == -8 && signature_torus(4, 5) == -8 &&
            signature_torus(3, 7) == -8 && signature_torus(5, 7) == -16 &&
            signature_torus(5, 11) == -24 && signature_torus(5, 12) == -28 &&
            signature_torus(4, 7) == -14 && signature_torus(5, 17) == -40;
  report(10, "built-in signatures reproduce every quoted value", ok);
}

}  // namespace

int main() {
  std::printf("pillowfloer acceptance suite\n");
  crit1_two_bridge();
  crit2_running_example();
  crit3_torus_table();
  crit4_component_structure();
  crit5_rank_alexander();
  crit6_invariance();
  crit7_index_properties();
  crit8_numerical_kernels();
  crit9_z_self_test();
  crit10_signatures();
  std::printf("%s (%d failure%s)\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE OK", failures,
              failures == 1 ? "" : "s");
  return failures ? 1 : 0;
}
