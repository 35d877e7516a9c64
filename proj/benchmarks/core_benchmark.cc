// Copyright 2026 The hgpointer Authors
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

#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "hgp/experiment_model.h"
#include "hgp/field_optics.h"
#include "hgp/fisher_bounds.h"
#include "hgp/mode_algebra.h"
#include "hgp/propagator.h"
#include "hgp/weak_measurement.h"

namespace hgp {
namespace {

void BM_LzMatrix(benchmark::State &state) {
    const int c = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(lz_matrix(c));
    }
}
BENCHMARK(BM_LzMatrix)->Arg(4)->Arg(11)->Arg(26);

void BM_OamEvolve(benchmark::State &state) {
    const int c = static_cast<int>(state.range(0));
    HermitianPropagator prop = HermitianPropagator::for_oam(c);
    ModeState s = ModeState::basis({c / 2, c / 2}, c);
    for (auto _ : state) {
        benchmark::DoNotOptimize(prop.evolve(s, 1e-3));
    }
}
BENCHMARK(BM_OamEvolve)->Arg(6)->Arg(12)->Arg(26);

void BM_ExactQfi(benchmark::State &state) {
    const int k = static_cast<int>(state.range(0));
    WeakScenario s = WeakScenario::create(1e-3, polarization_preselection(), polarization_postselection(0.1),
                                          PauliAxis::z(), Coupling::oam(), ModeState::basis({k, k}, k + 1));
    StateFn fn = [&](double a) { return final_pointer_exact(s.with_alpha(a)).pointer; };
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi_pure_numeric(fn, 1e-3));
    }
}
BENCHMARK(BM_ExactQfi)->Arg(1)->Arg(5)->Arg(10);

void BM_MixedQfi(benchmark::State &state) {
    const int k = static_cast<int>(state.range(0));
    ModeState p = ModeState::basis({k, k}, k + 1);
    QubitState q = QubitState::from_bloch(std::numbers::pi / 3.0, 0.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(qfi_mixed_monitor(q, 1e-3, p));
    }
}
BENCHMARK(BM_MixedQfi)->Arg(1)->Arg(3)->Arg(5);

void BM_RotateField(benchmark::State &state) {
    const int side = static_cast<int>(state.range(0));
    FieldGrid f = synthesize_hg_field({3, 3}, GridSpec::with_window(side, kDefaultWindowSigmas, 1.0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rotate_field(f, 1e-3));
    }
}
BENCHMARK(BM_RotateField)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_HologramRoundTrip(benchmark::State &state) {
    const int side = static_cast<int>(state.range(0));
    GridSpec spec = GridSpec::with_window(side, kDefaultWindowSigmas, 1.0);
    FieldGrid target = synthesize_hg_field({2, 2}, spec);
    FieldGrid light = gaussian_illumination(spec, 2.0);
    for (auto _ : state) {
        PhaseMap h = hologram_phase(target, light, kDefaultGratingPeriod);
        benchmark::DoNotOptimize(first_order_extract(apply_phase(light, h), kDefaultGratingPeriod));
    }
}
BENCHMARK(BM_HologramRoundTrip)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MonteCarloTrial(benchmark::State &state) {
    PhotonBudget b;
    DriveCalibration d = default_drive();
    double a = 2.0 * min_detectable_rotation({1, 1}, kDefaultEpsilon, photon_number(b));
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            montecarlo_lockin({1, 1}, kDefaultEpsilon, d, a, b, NoiseModel::shot_noise_only(), seed++, kMinTrials));
    }
}
BENCHMARK(BM_MonteCarloTrial)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hgp

BENCHMARK_MAIN();
