#include <benchmark/benchmark.h>

#include "sdnn/manufactured.hpp"
#include "sdnn/schur.hpp"
#include "sdnn/weights.hpp"

using namespace sdnn;

namespace {

CaseConfig bench_case(const benchmark::State& state) {
  return make_case(CaseLabel::b, static_cast<int>(state.range(0)));
}

InterfaceProblem bench_problem(const benchmark::State& state) {
  const auto cc = bench_case(state);
  return InterfaceProblem(assemble_case(cc, make_problem_data(ExactSolution(cc.params))));
}

WeightPair bench_weights(const CaseConfig& cc) {
  return optimal_weights({cc.params.mu_f, cc.params.eta_p()}, frequency_band(0.5, cc.h()));
}

void BM_Assembly(benchmark::State& state) {
  const auto cc = bench_case(state);
  const auto data = make_problem_data(ExactSolution(cc.params));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_case(cc, data));
}

void BM_ApplySigma(benchmark::State& state) {
  const auto ip = bench_problem(state);
  const Vector x = Vector::Ones(ip.size());
  benchmark::DoNotOptimize(ip.apply_sigma(x));  // factorize outside the loop
  for (auto _ : state) benchmark::DoNotOptimize(ip.apply_sigma(x));
}

void BM_ApplyPrecond(benchmark::State& state) {
  const auto ip = bench_problem(state);
  const auto w = bench_weights(bench_case(state));
  const Vector x = Vector::Ones(ip.size());
  benchmark::DoNotOptimize(ip.apply_precond(x, w));
  for (auto _ : state) benchmark::DoNotOptimize(ip.apply_precond(x, w));
}

void BM_PcgSolve(benchmark::State& state) {
  const auto ip = bench_problem(state);
  const auto w = bench_weights(bench_case(state));
  KrylovOptions o;
  o.tol = 1e-9;
  benchmark::DoNotOptimize(ip.apply_precond(ip.apply_sigma(ip.reduced_rhs()), w));
  for (auto _ : state)
    benchmark::DoNotOptimize(pcg(ip.sigma_operator(), ip.precond_operator(w), ip.reduced_rhs(), o));
}

void BM_Monolithic(benchmark::State& state) {
  const auto ip = bench_problem(state);
  for (auto _ : state) benchmark::DoNotOptimize(ip.monolithic_solve());
}

}  // namespace

BENCHMARK(BM_Assembly)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplySigma)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ApplyPrecond)->DenseRange(1, 4)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_PcgSolve)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Monolithic)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
