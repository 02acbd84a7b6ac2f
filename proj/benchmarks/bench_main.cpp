// Copyright 2026 The bidicache Authors
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

#include <vector>

#include "bidicache/harness.hpp"
#include "bidicache/sketch.hpp"

namespace {

using namespace bidicache;

std::vector<ItemKey> make_trace(std::uint64_t length, std::uint64_t ground) {
    SyntheticSpec spec;
    spec.length = length;
    spec.ground_set = ground;
    spec.skew = 0.8;
    spec.recency = 0.2;
    spec.rng_seed = 1;
    SyntheticStream s(spec);
    return collect(s);
}

void BM_SketchRecord(benchmark::State& state) {
    FrequencySketch sketch(SketchConfig::for_capacity(static_cast<std::uint64_t>(state.range(0))));
    const auto trace = make_trace(1 << 16, 100'000);
    std::size_t i = 0;
    for (auto _ : state) {
        sketch.record(trace[i++ & (trace.size() - 1)]);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SketchRecord)->Arg(1 << 10)->Arg(1 << 16);

void BM_SketchEstimate(benchmark::State& state) {
    FrequencySketch sketch(SketchConfig::for_capacity(static_cast<std::uint64_t>(state.range(0))));
    const auto trace = make_trace(1 << 16, 100'000);
    for (ItemKey k : trace) {
        sketch.record(k);
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sketch.estimate(trace[i++ & (trace.size() - 1)]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SketchEstimate)->Arg(1 << 10)->Arg(1 << 16);

void BM_PolicyAccess(benchmark::State& state) {
    PolicySpec spec;
    spec.kind = static_cast<PolicyKind>(state.range(0));
    spec.level_capacities = {5'000, 50'000};
    const auto trace = make_trace(1 << 20, 100'000);
    auto policy = make_policy(spec);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(&policy->access(trace[i++ & (trace.size() - 1)]));
    }
    state.SetItemsProcessed(state.iterations());
    state.SetLabel(std::string(policy->name()));
}
BENCHMARK(BM_PolicyAccess)->DenseRange(0, 4);

}  // namespace

BENCHMARK_MAIN();
