// Copyright 2026 The homsim Authors
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

// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include <numbers>

#include "homsim/coincidence.h"
#include "homsim/reference.h"

namespace {

using namespace homsim;

std::vector<double> delay_axis(int n) {
    double lc = default_coherence().coherence_length;
    std::vector<double> v(n);
    for (int i = 0; i < n; i++) {
        v[i] = -5 * lc + 10 * lc * i / (n - 1);
    }
    return v;
}

void BM_MapSerial(benchmark::State &state) {
    auto g = build_grid(static_cast<int>(state.range(0)), 1.0);
    auto mask = step_mask(std::numbers::pi, g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::multimode_map(mask, g, ideal_model()));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.mode_count() / 2));
}

void BM_MapParallel(benchmark::State &state) {
    auto g = build_grid(static_cast<int>(state.range(0)), 1.0);
    auto mask = step_mask(std::numbers::pi, g);
    for (auto _ : state) {
        benchmark::DoNotOptimize(multimode_map(mask, g, ideal_model()));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.mode_count() / 2));
}

void BM_SamplerSerial(benchmark::State &state) {
    std::vector<double> e(static_cast<size_t>(state.range(0)), 1e4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::sample_counts(e, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_SamplerParallel(benchmark::State &state) {
    std::vector<double> e(static_cast<size_t>(state.range(0)), 1e4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_counts(e, 1));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

std::vector<Circuit> scan_circuits(const MomentumGrid &g, int n) {
    std::vector<Circuit> circuits;
    for (double dl : delay_axis(n)) {
        circuits.push_back(with_idler_delay(hom_circuit(g, {10, 0}, std::numbers::pi), dl));
    }
    return circuits;
}

void BM_CircuitsSerial(benchmark::State &state) {
    auto g = build_grid(41, 1.0);
    auto src = spdc_state(g);
    auto circuits = scan_circuits(g, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::evaluate_circuits(circuits, src, {10, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_CircuitsParallel(benchmark::State &state) {
    auto g = build_grid(41, 1.0);
    auto src = spdc_state(g);
    auto circuits = scan_circuits(g, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_circuits(circuits, src, {10, 0}));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_DelayScanSerial(benchmark::State &state) {
    auto axis = delay_axis(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(serial::delay_scan(ideal_model(), 1.0, axis, 3));
    }
}

void BM_DelayScanParallel(benchmark::State &state) {
    auto axis = delay_axis(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(delay_scan(ideal_model(), 1.0, axis, 3));
    }
}

BENCHMARK(BM_MapSerial)->Arg(201)->Arg(1001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MapParallel)->Arg(201)->Arg(1001)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SamplerSerial)->Arg(533)->Arg(100000);
BENCHMARK(BM_SamplerParallel)->Arg(533)->Arg(100000);
BENCHMARK(BM_CircuitsSerial)->Arg(41)->Arg(533);
BENCHMARK(BM_CircuitsParallel)->Arg(41)->Arg(533);
BENCHMARK(BM_DelayScanSerial)->Arg(41)->Arg(10000);
BENCHMARK(BM_DelayScanParallel)->Arg(41)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
