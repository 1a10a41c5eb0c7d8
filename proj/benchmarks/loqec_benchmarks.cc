// Copyright 2026 The loqec Authors
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
#include <random>

#include "loqec/experiment.h"
#include "loqec/validation.h"

using namespace loqec;

static void BM_apply_mode_transform(benchmark::State &state) {
    auto n = static_cast<size_t>(state.range(0));
    ModeRegister modes;
    for (size_t k = 0; k < n; k++) {
        modes.push_back({static_cast<int>(k) + 1, Polarization::H});
    }
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g;
    PureState::AmplitudeMap amps;
    for (const auto &occ : enumerate_occupations(n, kDefaultMaxPhotons)) {
        amps.emplace(occ, Amplitude{g(rng), g(rng)});
    }
    auto s = PureState(modes, std::move(amps)).normalized();
    ModeTransform u(modes, random_unitary(static_cast<int>(n), 11));
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_mode_transform(s, u));
    }
}
BENCHMARK(BM_apply_mode_transform)->Arg(2)->Arg(4)->Arg(6);

static void BM_truth_table(benchmark::State &state) {
    auto net = build_cnot_network(kDefaultCnotEta);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate_truth_table(net));
    }
}
BENCHMARK(BM_truth_table);

static void BM_run_experiment(benchmark::State &state) {
    ExperimentConfig cfg;
    cfg.source.pump_angle = std::numbers::pi / 5;
    cfg.p_flip = 0.3;
    cfg.source.include_vacuum = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment(cfg));
    }
}
BENCHMARK(BM_run_experiment)->Arg(0)->Arg(1);

static void BM_validation(benchmark::State &state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_validation());
    }
}
BENCHMARK(BM_validation)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
