// Microbenchmarks for the hot paths: the three counters, the exponential
// sum kernel and the oscillatory quadrature.

#include <benchmark/benchmark.h>

#include <nearcurve/counting.hpp>
#include <nearcurve/expsums.hpp>
#include <nearcurve/numerics.hpp>

namespace {

using namespace nearcurve;

Curve parabola() {
  RatInterval unit(Rat(0), Rat(1));
  return Curve::polynomial({Rat(0), Rat(0), Rat(1)}, unit);
}

Curve cubic() {
  RatInterval sym(Rat(-1, 2), Rat(1, 2));
  return Curve::polynomial({Rat(0), Rat(0), Rat(0), Rat(1)}, sym);
}

void BM_count_naive(benchmark::State& state) {
  Curve f = parabola();
  CountQuery q(state.range(0), 0.25, f.domain());
  for (auto _ : state) {
    CountResult r = count_naive(f, q);
    benchmark::DoNotOptimize(r.N);
  }
}
BENCHMARK(BM_count_naive)->Arg(200)->Arg(1000)->Arg(4000);

void BM_count_fast(benchmark::State& state) {
  Curve f = parabola();
  CountQuery q(state.range(0), 0.25, f.domain());
  for (auto _ : state) {
    CountResult r = count_fast(f, q, 1);
    benchmark::DoNotOptimize(r.N);
  }
}
BENCHMARK(BM_count_fast)->Arg(200)->Arg(1000)->Arg(4000);

void BM_count_fast_cubic(benchmark::State& state) {
  Curve f = cubic();
  CountQuery q(state.range(0), 0.25, f.domain());
  for (auto _ : state) {
    CountResult r = count_fast(f, q, 1);
    benchmark::DoNotOptimize(r.N);
  }
}
BENCHMARK(BM_count_fast_cubic)->Arg(200)->Arg(1000)->Arg(4000);

void BM_count_exact(benchmark::State& state) {
  Curve f = parabola();
  CountQuery q(state.range(0), Rat(1, 4), f.domain());
  for (auto _ : state) {
    CountResult r = count_exact_poly(f, q);
    benchmark::DoNotOptimize(r.N);
  }
}
BENCHMARK(BM_count_exact)->Arg(200)->Arg(1000)->Arg(4000);

void BM_exp_sum(benchmark::State& state) {
  Curve f = parabola();
  for (auto _ : state) {
    auto s = exp_sum(f, f.domain(), state.range(0), 1);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_exp_sum)->Arg(100)->Arg(400);

void BM_oscillatory_integral(benchmark::State& state) {
  const double lambda = static_cast<double>(state.range(0));
  auto phase = [lambda](double x) { return lambda * x * x; };
  for (auto _ : state) {
    QuadratureResult r = oscillatory_integral(phase, 0.0, 1.0);
    benchmark::DoNotOptimize(r.value);
  }
}
BENCHMARK(BM_oscillatory_integral)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
