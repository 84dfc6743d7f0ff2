#include "hqft/config.hpp"
#include "hqft/fock_vector.hpp"
#include "hqft/foliation.hpp"
#include "hqft/history_algebra.hpp"

#include <benchmark/benchmark.h>

using namespace hqft;

namespace {

struct Fixture {
  QuadratureGrid grid = build_quadrature(1.0, 12);
  TestFunction f, g;
  FoliationVector n;
  Fixture() {
    std::mt19937_64 rng(7);
    const RandomPacketSpec spec;
    f = random_real_test_function(rng, spec);
    g = random_real_test_function(rng, spec);
    n = random_foliation(rng, 2.0);
  }
};

const Fixture& fixture() {
  static const Fixture fx;
  return fx;
}

void BM_InnerPolynomial(benchmark::State& state) {
  const auto& fx = fixture();
  const SymbolFunction s = gamma_symbol(fx.n, 1.0) * SymbolFunction::momentum(1);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_inner(fx.f, s, fx.g, fx.grid));
}
BENCHMARK(BM_InnerPolynomial);

void BM_InnerFractional(benchmark::State& state) {
  const auto& fx = fixture();
  const SymbolFunction s = SymbolFunction::gamma_power(fx.n, 1.0, state.range(0) / 4.0);
  for (auto _ : state) benchmark::DoNotOptimize(weighted_inner(fx.f, s, fx.g, fx.grid));
}
BENCHMARK(BM_InnerFractional)->Arg(-2)->Arg(-1)->Arg(1)->Arg(2);

void BM_InnerExpFactor(benchmark::State& state) {
  const auto& fx = fixture();
  const SymbolFunction s = SymbolFunction::exp_sqrt_gamma(fx.n, 1.0, Complex(0.0, 0.7));
  for (auto _ : state) benchmark::DoNotOptimize(weighted_inner(fx.f, s, fx.g, fx.grid));
}
BENCHMARK(BM_InnerExpFactor);

void BM_FoliationAlgebra(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(verify_foliation_algebra(static_cast<int>(state.range(0))).failures());
}
BENCHMARK(BM_FoliationAlgebra)->Arg(2)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_FockInner(benchmark::State& state) {
  const auto& fx = fixture();
  FockVector v = FockVector::vacuum();
  for (int i = 0; i < state.range(0); ++i) v = v.create(Coefficient::of(i % 2 ? fx.f : fx.g));
  for (auto _ : state) {
    OneParticleCache cache(fx.grid);
    benchmark::DoNotOptimize(fock_inner(v, v, cache));
  }
}
BENCHMARK(BM_FockInner)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
