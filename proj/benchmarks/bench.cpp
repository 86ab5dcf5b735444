#include <benchmark/benchmark.h>

#include <cstdlib>

#include "pillowfloer/knots.hpp"

using namespace pillowfloer;

namespace {

void BM_FigureEight(benchmark::State& state) {
  for (auto _ : state) {
    auto c = figure_eight(0.1, {}, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_FigureEight)->Arg(512)->Arg(2048);

void BM_Intersections2Bridge(benchmark::State& state) {
  const LiftedCurve L0 = figure_eight(0.1, {});
  const LiftedCurve arc = two_bridge_curve(TwoBridgeSpec(11, -5));
  for (auto _ : state) {
    auto x = intersections(L0, arc);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Intersections2Bridge);

void BM_TwoBridgeExact(benchmark::State& state) {
  for (auto _ : state) {
    auto cx = two_bridge_complex(TwoBridgeSpec(101, -34));
    benchmark::DoNotOptimize(cx);
  }
}
BENCHMARK(BM_TwoBridgeExact);

void BM_PsiEval(benchmark::State& state) {
  const TorusSpec spec(5, 11, 9, -4, 0.01, 0.0);
  double u = 0.3, v = 1.1, t = 0.2;
  for (auto _ : state) {
    auto f = psi(spec, u, v, t);
    benchmark::DoNotOptimize(f);
    u += 1e-6;
  }
}
BENCHMARK(BM_PsiEval);

void BM_Trace37(benchmark::State& state) {
  const TorusSpec spec(3, 7, 5, -2, 0.01, 0.0);
  TraceOptions opt;
  opt.seed_grid = 32;
  for (auto _ : state) {
    auto res = trace_character_variety(spec, opt);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_Trace37)->Unit(benchmark::kMillisecond);

void BM_BigonSearchRe1(benchmark::State& state) {
  const LiftedCurve L0 = figure_eight(0.1, {});
  const auto rep = torus_knot_homology(TorusSpec(5, 11, 9, -4, 0.01, 0.0));
  // reuse the first running-example circle from the (5,11) trace
  const LiftedCurve* re1 = nullptr;
  for (const auto& c : rep.trace.components)
    if (std::labs(c.pillow_trace.closure.m) == 2) re1 = &c.pillow_trace;
  if (!re1) {
    state.SkipWithError("no running-example circle traced");
    return;
  }
  const auto gens = intersections(L0, *re1);
  for (auto _ : state) {
    auto b = find_bigons(L0, *re1, gens);
    benchmark::DoNotOptimize(b);
  }
}
BENCHMARK(BM_BigonSearchRe1)->Unit(benchmark::kMillisecond);

void BM_Signature517(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(signature_torus(5, 17));
  }
}
BENCHMARK(BM_Signature517);

}  // namespace

BENCHMARK_MAIN();
