// Copyright 2026 The ringcert Authors
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

#include "ringcert/certify.hpp"
#include "ringcert/rgb4.hpp"
#include "ringcert/rigidity.hpp"
#include "ringcert/ring.hpp"
#include "ringcert/verify.hpp"

namespace {

using namespace ringcert;

void BM_rgb4_closed_form(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(rgb4_closed_form(0.36));
}
BENCHMARK(BM_rgb4_closed_form);

void BM_rgb4_quantum_distribution(benchmark::State& state) {
    const CanonicalRgb4Strategy s = rgb4_strategy(0.36);
    for (auto _ : state)
        benchmark::DoNotOptimize(quantum_distribution(s.strategy));
}
BENCHMARK(BM_rgb4_quantum_distribution);

void BM_coherence(benchmark::State& state) {
    const CanonicalRgb4Strategy s = rgb4_strategy(0.36);
    for (auto _ : state) benchmark::DoNotOptimize(coherence_r(s));
}
BENCHMARK(BM_coherence);

void BM_classical_tokens(benchmark::State& state) {
    TokenStrategy ts;
    ts.mode = TokenMode::TC;
    ts.n = static_cast<int>(state.range(0));
    for (int k = 0; k < ts.n; ++k) {
        ts.tokens.push_back(2);
        ts.send_right_probs.push_back({0.2, 0.5, 0.3});
    }
    for (auto _ : state) benchmark::DoNotOptimize(classical_distribution(ts));
}
BENCHMARK(BM_classical_tokens)->Arg(3)->Arg(4)->Arg(5);

void BM_chain_operators(benchmark::State& state) {
    const QuantumRingStrategy s =
        canonical_tc_strategy({1, 1, 1}, {{0.3, 0.7}, {0.5, 0.5}, {0.25, 0.75}});
    const std::vector<PartyUnitary> units = canonical_tc_units(s, 3);
    for (auto _ : state)
        benchmark::DoNotOptimize(build_chain_operators(s, units));
}
BENCHMARK(BM_chain_operators);

void BM_lemma_trial(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const std::vector<int> dims(static_cast<std::size_t>(n), 2);
    std::uint64_t seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(lemma_chain_harness(
            seed++, n, dims,
            n % 2 == 0 ? ChainParity::kEven : ChainParity::kOdd, false));
}
BENCHMARK(BM_lemma_trial)->Arg(3)->Arg(4);

void BM_floor_closed_form(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(r_lower_bound(0.36));
}
BENCHMARK(BM_floor_closed_form);

void BM_certificate(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(certificate(0.36));
}
BENCHMARK(BM_certificate);

void BM_feasibility_oracle(benchmark::State& state) {
    for (auto _ : state)
        benchmark::DoNotOptimize(r_feasibility_oracle(0.36, 1e-6, 200));
}
BENCHMARK(BM_feasibility_oracle);

void BM_token_function_search(benchmark::State& state) {
    TokenStrategy ts;
    ts.mode = TokenMode::TC;
    ts.n = 3;
    ts.tokens = {2, 2, 2};
    ts.send_right_probs = {{0.2, 0.3, 0.5}, {0.5, 0.3, 0.2}, {0.1, 0.6, 0.3}};
    const TokenSearchInput in = token_search_input(ts);
    for (auto _ : state) benchmark::DoNotOptimize(find_token_functions(in));
}
BENCHMARK(BM_token_function_search);

}  // namespace

BENCHMARK_MAIN();
