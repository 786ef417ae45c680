// Copyright 2026 The tightbounds Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tightbounds/bounds.hpp"
#include "tightbounds/newsvendor.hpp"
#include "tightbounds/oracle.hpp"
#include "tightbounds/pricing.hpp"

using namespace tightbounds;

namespace {

// Exponent passed as p * 10 so that benchmark arguments stay integral.
double exponent(const benchmark::State& state) { return state.range(0) / 10.0; }

void BM_CondExpPower(benchmark::State& state) {
  const double p = exponent(state);
  for (auto _ : state) benchmark::DoNotOptimize(cond_expectation_sup_power(1, 0.7, p, 0.2).value);
}
BENCHMARK(BM_CondExpPower)->Arg(12)->Arg(15)->Arg(30);

void BM_CondExpGeneric(benchmark::State& state) {
  const auto spec = DispersionSpec::power(1, exponent(state), 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cond_expectation_sup(spec, 0.2, {}, Route::Generic).value);
  }
}
BENCHMARK(BM_CondExpGeneric)->Arg(12)->Arg(15)->Arg(30);

void BM_MaxOpPower(benchmark::State& state) {
  const double p = exponent(state);
  for (auto _ : state) benchmark::DoNotOptimize(max_operator_sup_power(1, 0.7, p, 1.2).value);
}
BENCHMARK(BM_MaxOpPower)->Arg(12)->Arg(15)->Arg(30);

void BM_MaxOpGeneric(benchmark::State& state) {
  const auto spec = DispersionSpec::power(1, exponent(state), 0.7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_operator_sup(spec, 1.2, {}, Route::Generic).value);
  }
}
BENCHMARK(BM_MaxOpGeneric)->Arg(12)->Arg(15)->Arg(30);

void BM_NewsvendorSolve(benchmark::State& state) {
  const NewsvendorProblem prob{DispersionSpec::power(1, exponent(state), 0.5), 10, 1};
  for (auto _ : state) benchmark::DoNotOptimize(solve(prob).q_star);
}
BENCHMARK(BM_NewsvendorSolve)->Arg(15)->Arg(25)->Arg(40);

void BM_PbarSweep(benchmark::State& state) {
  std::vector<double> grid;
  for (int i = 11; i <= 50; ++i) grid.push_back(i / 10.0);
  for (auto _ : state) benchmark::DoNotOptimize(sweep_pbar(1, 0.5, 10, 1, grid).p_bar);
}
BENCHMARK(BM_PbarSweep)->Unit(benchmark::kMillisecond);

void BM_PricingSolve(benchmark::State& state) {
  const auto prob = PricingProblem::power(exponent(state), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(solve(prob).ratio);
}
BENCHMARK(BM_PricingSolve)->Arg(10)->Arg(15)->Arg(20);

void BM_TransitionDelta(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(transition_delta(1.5));
}
BENCHMARK(BM_TransitionDelta)->Unit(benchmark::kMillisecond);

void BM_SampleThreePoint(benchmark::State& state) {
  const auto spec = DispersionSpec::power(1, 1.5, 1);
  oracle::SampleOptions opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    const auto r = oracle::sample_three_point(spec, oracle::Objective::max_op(0.5), 100000, 0, opt);
    benchmark::DoNotOptimize(r.best_objective);
  }
  state.SetItemsProcessed(state.iterations() * 100000);
}
BENCHMARK(BM_SampleThreePoint)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

void BM_SweepTwoPoint(benchmark::State& state) {
  const auto spec = DispersionSpec::power(1, 1.5, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::sweep_two_point(spec, oracle::Objective::max_op(1), 10000).best_objective);
  }
}
BENCHMARK(BM_SweepTwoPoint)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
