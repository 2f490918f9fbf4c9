// Copyright 2026 The qscen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "qscen/nonlocal.hpp"
#include "qscen/optics.hpp"
#include "qscen/scenarios.hpp"

namespace {

using namespace qscen;

StateVector bell_like(double p) {
  CompositeSpace space({SubsystemSpec::spin_half("A"), SubsystemSpec::spin_half("B")});
  Amplitudes a = Amplitudes::Zero(4);
  a(1) = std::sqrt(p);
  a(2) = std::sqrt(1.0 - p);
  return StateVector(space, a);
}

void BM_HardyCircuit(benchmark::State& st) {
  const auto s = hardy_default();
  for (auto _ : st) {
    benchmark::DoNotOptimize(run_circuit(s.circuit_for(true, true), s.input));
  }
}
BENCHMARK(BM_HardyCircuit)->Unit(benchmark::kMillisecond);

void BM_HardyConditionals(benchmark::State& st) {
  const auto s = hardy_default();
  for (auto _ : st) benchmark::DoNotOptimize(hardy_conditionals(s));
}
BENCHMARK(BM_HardyConditionals)->Unit(benchmark::kMillisecond)->Iterations(3);

void BM_ChshMax(benchmark::State& st) {
  const auto state = bell_like(0.3);
  for (auto _ : st) benchmark::DoNotOptimize(chsh_max(state));
}
BENCHMARK(BM_ChshMax)->Unit(benchmark::kMillisecond);

void BM_LhvMembership(benchmark::State& st) {
  const auto state = bell_like(0.5);
  const auto behavior = behavior_from_state(state, chsh_max(state).angles);
  for (auto _ : st) benchmark::DoNotOptimize(lhv_membership(behavior));
}
BENCHMARK(BM_LhvMembership)->Unit(benchmark::kMicrosecond);

// Uniform noise mixed into the CHSH-optimal behavior; stays inside the polytope.
void BM_LhvMembershipLocal(benchmark::State& st) {
  const auto state = bell_like(0.5);
  const auto q = behavior_from_state(state, chsh_max(state).angles);
  std::vector<double> t(16);
  for (std::size_t i = 0; i < 16; ++i) t[i] = 0.6 * q.table()[i] + 0.4 * 0.25;
  const BipartiteBehavior p(2, 2, 2, 2, t);
  for (auto _ : st) benchmark::DoNotOptimize(lhv_membership(p));
}
BENCHMARK(BM_LhvMembershipLocal)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
