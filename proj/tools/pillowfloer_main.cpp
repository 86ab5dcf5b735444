// pillowfloer: Lagrangian-Floer homology of restricted immersed curves in the
// pillowcase.  Subcommands build the input curves for 2-bridge and torus
// knots, run the Floer pipeline on curve files, render SVG pictures, and run
// the property-suite verifier.  Exit codes: 0 ok, 1 computation failed,
// 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "pillowfloer/errors.hpp"
#include "pillowfloer/json_io.hpp"
#include "pillowfloer/svg.hpp"

using namespace pillowfloer;

namespace {

struct CommonFlags {
  double eps = 0.1;
  std::string g_spec;
  double epsA = 0.01, epsB = 0.0;
  std::optional<int> signature;
  int samples = 512;
  int window = 1;
  int kmax = 2;
  double tol = 1e-9;
  std::string json_path, svg_path;
  int seed_grid = 64;
};

void add_common(CLI::App* cmd, CommonFlags* f) {
  cmd->add_option("--eps", f->eps, "figure-eight amplitude (default 0.1)");
  cmd->add_option("--g", f->g_spec, "sine series for the isotopy, \"<k>:<amp>,...\"");
  cmd->add_option("--epsA", f->epsA, "holonomy perturbation amplitude on P_A");
  cmd->add_option("--epsB", f->epsB, "holonomy perturbation amplitude on P_B");
  auto* sig = cmd->add_option("--signature", "override the built-in knot signature");
  sig->each([f](const std::string& s) { f->signature = std::stoi(s); });
  cmd->add_option("--samples", f->samples, "figure-eight sample count");
  cmd->add_option("--window", f->window, "deck-translate window, in 2*pi periods");
  cmd->add_option("--kmax", f->kmax, "bigon subpath winding cap, in periods");
  cmd->add_option("--tol", f->tol, "lattice/corner coincidence tolerance");
  cmd->add_option("--json", f->json_path, "write the JSON report here");
  cmd->add_option("--svg", f->svg_path, "write an SVG picture here");
  cmd->add_option("--seed-grid", f->seed_grid, "continuation seed grid resolution");
}

PerturbationFunction parse_g(const std::string& spec) {
  PerturbationFunction g;
  if (spec.empty()) return g;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--g expects <k>:<amp>,...");
    const int k = std::stoi(item.substr(0, colon));
    const double amp = std::stod(item.substr(colon + 1));
    if (k < 1) throw CLI::ValidationError("--g harmonic index must be >= 1");
    if (static_cast<size_t>(k) > g.coeffs.size()) g.coeffs.resize(k, 0.0);
    g.coeffs[k - 1] = amp;
  }
  return g;
}

void emit(const RunReport& rep, const CommonFlags& f, const LiftedCurve& L0,
          const std::vector<LiftedCurve>& comps) {
  std::cout << report_to_text(rep);
  if (!f.json_path.empty()) {
    std::ofstream out(f.json_path);
    out << report_to_json(rep) << "\n";
  }
  if (!f.svg_path.empty()) save_svg(render_svg(L0, comps, &rep.complex), f.svg_path);
}

int cmd_two_bridge(long p, long q, const CommonFlags& f) {
  const TwoBridgeSpec spec(p, q);
  const auto exact = two_bridge_complex(spec, f.signature);

  // generic pipeline on the PL data backs the report geometry
  const LiftedCurve arc = two_bridge_curve(spec);
  const LiftedCurve L0 = figure_eight(f.eps, parse_g(f.g_spec), f.samples);
  BigonOptions bopt;
  bopt.tol = f.tol;
  bopt.k_max = f.kmax;
  bopt.window_periods = f.window;
  RunReport rep;
  rep.command = "two-bridge";
  rep.input = "K(" + std::to_string(p) + "," + std::to_string(q) + ")";
  rep.complex = build_complex(L0, {arc}, exact.signature, bopt);
  rep.eps = f.eps;
  rep.g = parse_g(f.g_spec);
  rep.signature = exact.signature;
  rep.samples = f.samples;
  rep.window = f.window;
  rep.kmax = f.kmax;
  rep.tol = f.tol;

  // cross-check the generic run against the exact gradings
  const GradedRanks got = homology(rep.complex);
  if (!(got == exact.ranks())) {
    std::ostringstream os;
    os << "generic pipeline " << got.str() << " disagrees with exact gradings "
       << exact.ranks().str();
    rep.warnings.push_back(os.str());
  }
  for (const auto& c : rep.complex.components) rep.component_homology.push_back(homology_component(c));
  rep.total_homology = got;
  emit(rep, f, L0, {arc});
  return rep.warnings.empty() ? 0 : 1;
}

int cmd_torus(long p, long q, long r, long s, const CommonFlags& f) {
  TorusSpec spec(p, q, r, s, f.epsA, f.epsB);
  TraceOptions topt;
  topt.seed_grid = f.seed_grid;
  const auto rep0 = torus_knot_homology(spec, f.eps, parse_g(f.g_spec), f.signature, topt);

  RunReport rep;
  rep.command = "torus";
  rep.input = "T(" + std::to_string(p) + "," + std::to_string(q) + ") r=" + std::to_string(r) +
              " s=" + std::to_string(s);
  rep.complex = rep0.complex;
  rep.component_homology = rep0.component_homology;
  rep.total_homology = rep0.total_homology;
  rep.warnings = rep0.warnings;
  rep.eps = rep0.eps_used;
  rep.g = rep0.g_used;
  rep.epsA = f.epsA;
  rep.epsB = f.epsB;
  rep.signature = rep0.signature;
  rep.samples = f.samples;
  rep.window = f.window;
  rep.kmax = f.kmax;
  rep.tol = f.tol;
  rep.seed_grid = f.seed_grid;

  std::vector<LiftedCurve> comps;
  for (const auto& c : rep0.trace.components) comps.push_back(c.pillow_trace);
  const LiftedCurve L0 = figure_eight(rep0.eps_used, rep0.g_used, f.samples);
  emit(rep, f, L0, comps);

  if (!f.json_path.empty()) {
    std::ofstream side(f.json_path + ".trace.json");
    side << trace_sidecar_json(rep0.trace) << "\n";
  }
  return 0;
}

int cmd_floer(const std::string& l1_path, const std::string& l0_path, const CommonFlags& f) {
  std::vector<LiftedCurve> comps = load_curves(l1_path);
  LiftedCurve L0 = l0_path.empty() ? figure_eight(f.eps, parse_g(f.g_spec), f.samples)
                                   : load_curves(l0_path).at(0);
  for (auto& c : comps) c.validate(f.tol);
  BigonOptions bopt;
  bopt.tol = f.tol;
  bopt.k_max = f.kmax;
  bopt.window_periods = f.window;

  RunReport rep;
  rep.command = "floer";
  rep.input = l1_path;
  rep.complex = build_complex(L0, comps, f.signature, bopt);
  for (const auto& c : rep.complex.components) rep.component_homology.push_back(homology_component(c));
  rep.total_homology = homology(rep.complex);
  rep.eps = f.eps;
  rep.g = parse_g(f.g_spec);
  rep.signature = f.signature;
  rep.samples = f.samples;
  rep.window = f.window;
  rep.kmax = f.kmax;
  rep.tol = f.tol;
  emit(rep, f, L0, comps);
  return 0;
}

int cmd_render(const std::string& l1_path, const CommonFlags& f) {
  if (f.svg_path.empty()) throw CLI::ValidationError("render needs --svg <path>");
  CommonFlags ff = f;
  return cmd_floer(l1_path, "", ff);
}

int run_verify();

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lagrangian-Floer homology in the pillowcase"};
  app.require_subcommand(1);

  CommonFlags f;
  long p = 0, q = 0, r = 0, s = 0;
  std::string l1_path, l0_path;

  auto* tb = app.add_subcommand("two-bridge", "pillowcase homology of a 2-bridge knot K(p,q)");
  tb->add_option("p", p)->required();
  tb->add_option("q", q)->required();
  add_common(tb, &f);

  auto* to = app.add_subcommand("torus", "pillowcase homology of a torus knot T(p,q), pr+qs=1");
  to->add_option("p", p)->required();
  to->add_option("q", q)->required();
  to->add_option("r", r)->required();
  to->add_option("s", s)->required();
  add_common(to, &f);

  auto* fl = app.add_subcommand("floer", "Floer pipeline on a JSON curve file");
  fl->add_option("--l1", l1_path, "curve file with the L1 components")->required();
  fl->add_option("--l0", l0_path, "optional curve file overriding L0");
  add_common(fl, &f);

  auto* re = app.add_subcommand("render", "render a curve file to SVG");
  re->add_option("--l1", l1_path)->required();
  add_common(re, &f);

  auto* ve = app.add_subcommand("verify", "run the invariant & property suites");
  (void)ve;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (tb->parsed()) return cmd_two_bridge(p, q, f);
    if (to->parsed()) return cmd_torus(p, q, r, s, f);
    if (fl->parsed()) return cmd_floer(l1_path, l0_path, f);
    if (re->parsed()) return cmd_render(l1_path, f);
    if (ve->parsed()) return run_verify();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

// ---------------------------------------------------------------------------
// verify: the Invariants & Properties suites, exits nonzero on any failure

namespace {

int checks_failed = 0;

void check(bool ok, const std::string& name) {
  std::printf("%-58s %s\n", name.c_str(), ok ? "ok" : "FAIL");
  if (!ok) ++checks_failed;
}

int run_verify() {
  using std::vector;

  // deck group axioms by enumeration, |m|,|n| <= 3
  {
    vector<DeckElement> els;
    for (long m = -3; m <= 3; ++m)
      for (long n = -3; n <= 3; ++n)
        for (int s2 : {1, -1}) els.push_back({m, n, s2});
    bool ok = true;
    const Vec2 probe{0.3, 1.1};
    for (const auto& a : els) {
      ok = ok && dist(a.compose(a.inverse()).apply(probe), probe) < 1e-12;
      for (const auto& b : els) {
        ok = ok && dist(a.compose(b).apply(probe), a.apply(b.apply(probe))) < 1e-9;
        if (a.sigma == -1) {
          const DeckElement sq = a.compose(a);
          ok = ok && sq.sigma == 1 && sq.m == 0 && sq.n == 0;
        }
      }
    }
    check(ok, "deck group axioms (|m|,|n| <= 3)");
  }

  // z self-test: the four corner loops evaluate to 1
  {
    bool ok = true;
    for (double cg : {0.0, kPi})
      for (double ct : {0.0, kPi}) {
        LiftedLoop l;
        for (int k = 0; k <= 40; ++k) {
          const double a = 0.13 + kPi * k / 40;
          l.points.push_back({cg + 0.2 * std::cos(a), ct + 0.2 * std::sin(a)});
        }
        l.closure = canonicalize(LiftPoint(l.points.back())).deck.compose(
            canonicalize(LiftPoint(l.points.front())).deck.inverse());
        // direct half-turn closure about the corner
        l.closure = DeckElement{static_cast<long>(std::lround(2 * cg / kTwoPi)),
                                static_cast<long>(std::lround(2 * ct / kTwoPi)), -1};
        ok = ok && z_of_loop(l) == 1;
      }
    check(ok, "z = 1 on the four counterclockwise corner loops");
  }

  // z of a contractible loop, z(L0) and z = sum of windings
  {
    LiftedLoop l;
    for (int k = 0; k <= 60; ++k) {
      const double a = kTwoPi * k / 60;
      l.points.push_back({1.4 + 0.2 * std::cos(a), 0.8 + 0.2 * std::sin(a)});
    }
    l.closure = DeckElement::identity();
    check(z_of_loop(l) == 0, "z = 0 on a contractible loop");

    const LiftedCurve L0 = figure_eight(0.1, {});
    check(z_of_loop_jiggled(circle_loop(L0)) == 0, "z(L0^{0.1,0}) = 0");
    check(circle_maslov(L0) == 0, "mu(L0^{0.1,0}, ell_1) = 0");
  }

  // tau identity on random transverse triples
  {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> U(0.0, kPi);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const LineSlope a(U(rng)), b(U(rng)), c(U(rng));
      if (wrap(a.angle - b.angle, kPi) < 1e-3 || wrap(b.angle - a.angle, kPi) < 1e-3) continue;
      ok = ok && triple_index(a, b, c) + triple_index(b, a, c) == 1;
    }
    check(ok, "tau(l0,l1,l) + tau(l1,l0,l) = 1 (1000 random)");
  }

  // Mas = 3 - n on random convex clockwise polygons (vertices in clockwise
  // angular order on a random ellipse are always convex)
  {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    bool ok = true;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 3 + static_cast<int>(trial % 5);
      const double a = 0.5 + U(rng), b = 0.5 + U(rng);
      vector<double> ang;
      for (int k = 0; k < n; ++k) ang.push_back(U(rng) * kTwoPi);
      std::sort(ang.rbegin(), ang.rend());
      bool spaced = true;
      for (int k = 0; k + 1 < n; ++k) spaced = spaced && ang[k] - ang[k + 1] > 0.15;
      spaced = spaced && (ang.front() - ang.back()) < kTwoPi - 0.15;
      if (!spaced) continue;
      vector<vector<Vec2>> paths;
      for (int k = 0; k < n; ++k) {
        const Vec2 c0{a * std::cos(ang[k]), b * std::sin(ang[k])};
        const Vec2 c1{a * std::cos(ang[(k + 1) % n]), b * std::sin(ang[(k + 1) % n])};
        paths.push_back({c0, c1});
      }
      ok = ok && mas_ngon(paths) == 3 - n;
    }
    check(ok, "Mas = 3 - n on random convex clockwise n-gons");
  }

  // two-bridge golden values and exact/generic agreement
  {
    const TwoBridgeSpec spec(11, -5);
    const auto exact = two_bridge_complex(spec);
    GradedRanks want;
    want.n = {3, 2, 3, 3};
    check(exact.ranks() == want && exact.signature == 2, "K(11,-5): sigma=2, H=(3,2,3,3)");
    const LiftedCurve L0 = figure_eight(0.1, {});
    const auto cx = build_complex(L0, {two_bridge_curve(spec)}, exact.signature);
    check(homology(cx) == want && cx.rank() == 11, "K(11,-5): generic pipeline agrees, rank 11");
  }

  // signatures quoted in the calculations
  {
    bool ok = signature_torus(3, 4) == -6 && signature_torus(3, 5) == -8 &&
              signature_torus(4, 5) == -8 && signature_torus(3, 7) == -8 &&
              signature_torus(5, 7) == -16 && signature_torus(5, 11) == -24 &&
              signature_torus(5, 12) == -28 && signature_torus(4, 7) == -14 &&
              signature_torus(5, 17) == -40;
    check(ok, "torus knot signatures");
    check(alexander_abs_sum_torus(3, 5) == 7 && alexander_abs_sum_torus(4, 7) == 11 &&
              alexander_abs_sum_torus(5, 11) == 17,
          "Alexander |coeff| sums");
  }

  // Psi Jacobian against central differences
  {
    const TorusSpec spec(3, 5, 2, -1, 0.013, 0.007);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(0.05, kPi - 0.05);
    std::uniform_real_distribution<double> T(-0.95, 0.95);
    double maxrel = 0;
    for (int i = 0; i < 1000; ++i) {
      const double u = U(rng), v = U(rng), t = T(rng);
      const auto J = psi_jacobian(spec, u, v, t);
      const double h = 1e-6;
      auto at = [&](double du, double dv, double dt, double dA, double dB) {
        TorusSpec s2 = spec;
        s2.epsA += dA;
        s2.epsB += dB;
        return psi(s2, u + du, v + dv, t + dt);
      };
      const double checks[5][2] = {
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
        for (int rrow = 0; rrow < 2; ++rrow) {
          const double den = std::max(1.0, std::abs(J[rrow][c]));
          maxrel = std::max(maxrel, std::abs(J[rrow][c] - checks[c][rrow]) / den);
        }
    }
    check(maxrel < 1e-6, "Psi Jacobian vs central differences (< 1e-6)");
  }

  std::printf("%s\n", checks_failed ? "VERIFY FAILED" : "VERIFY OK");
  return checks_failed ? 1 : 0;
}

}  // namespace
