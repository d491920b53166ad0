#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "qcrit/ed.hpp"
#include "qcrit/entanglement.hpp"
#include "qcrit/ising.hpp"
#include "qcrit/scaling.hpp"

using namespace qcrit;

namespace {

void BM_IsingCorrelators(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(ising::correlators(ising::IsingParams(n, 0.97)));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_IsingCorrelators)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_IsingAnalyticDerivative(benchmark::State& state) {
  const ising::IsingParams p(static_cast<std::size_t>(state.range(0)), 0.99);
  for (auto _ : state) benchmark::DoNotOptimize(ising::drho_dlambda(p, ising::Method::analytic));
}
BENCHMARK(BM_IsingAnalyticDerivative)->Arg(1000)->Arg(3050);

void BM_HermitianEigen(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) {
      m(r, c) = r == c ? Complex(g(rng)) : Complex(g(rng), g(rng));
      m(c, r) = std::conj(m(r, c));
    }
  for (auto _ : state) benchmark::DoNotOptimize(eig_hermitian(m));
}
BENCHMARK(BM_HermitianEigen)->Arg(16)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_GroundLevelTfim(benchmark::State& state) {
  const auto chain = ising::hamiltonian(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(ed::ground_level(chain, 0.8));
}
BENCHMARK(BM_GroundLevelTfim)->Arg(8)->Arg(10)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_Measures(benchmark::State& state) {
  const auto rho = ising::rdm_nn(ising::IsingParams(1000, 0.7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(concurrence(rho));
    benchmark::DoNotOptimize(negativity(rho));
  }
}
BENCHMARK(BM_Measures);

void BM_Collapse(benchmark::State& state) {
  std::vector<scaling::Curve> curves;
  for (std::size_t n : {50u, 250u, 1050u}) {
    scaling::Curve c;
    c.n = n;
    for (int k = 0; k <= 400; ++k) {
      const double lam = 0.9 + 0.2 * k / 400.0;
      c.grid.push_back(lam);
      c.values.push_back(ising::drho_dlambda(ising::IsingParams(n, lam), ising::Method::analytic)(1, 1).real());
    }
    curves.push_back(std::move(c));
  }
  for (auto _ : state) benchmark::DoNotOptimize(scaling::collapse(curves, 1.0));
}
BENCHMARK(BM_Collapse);

}  // namespace

BENCHMARK_MAIN();
