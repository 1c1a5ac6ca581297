/*
   Copyright 2026 The vortexmf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/


#include "vortexmf/density.hpp"
#include "vortexmf/kernel.hpp"
#include "vortexmf/noise_field.hpp"
#include "vortexmf/ns_spectral.hpp"

#include <benchmark/benchmark.h>

using namespace vortexmf;

namespace {

const KernelEvaluator &kernel()
{
    static const KernelEvaluator e;
    return e;
}

std::vector<TorusPoint> particles(std::size_t n)
{
    return sample_initial(DensitySpec::default_experiment(), n, 7, 0).positions;
}

void BM_DriftSerial(benchmark::State &state)
{
    const KernelEvaluator &k = kernel(); // table build kept out of the timing
    auto x = particles(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(reference::pairwise_drift(k, x));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_DriftParallel(benchmark::State &state)
{
    const KernelEvaluator &k = kernel(); // table build kept out of the timing
    auto x = particles(std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(pairwise_drift(k, x));
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void noise_bench(benchmark::State &state, NoiseBackend backend)
{
    const std::size_t n = std::size_t(state.range(0));
    const int cutoff = int(state.range(1));
    NoiseField field(make_noise_spec(std::make_shared<const ThetaSpec>(make_theta(cutoff)), 0.05));
    auto x = particles(n);
    NoiseIncrement inc = sample_increment(*field.spec().theta, 1e-3, 1, 0, 0);
    for (auto _ : state) benchmark::DoNotOptimize(field.displacements(inc, x, backend));
}

void BM_NoiseDirect(benchmark::State &state) { noise_bench(state, NoiseBackend::direct); }
void BM_NoiseSpectral(benchmark::State &state) { noise_bench(state, NoiseBackend::spectral); }

void BM_QuadraticVariation(benchmark::State &state)
{
    NoiseSpec spec = make_noise_spec(std::make_shared<const ThetaSpec>(make_theta(int(state.range(1)))), 0.05);
    auto x = particles(std::size_t(state.range(0)));
    const std::vector<Mode> modes{{1, 0}, {0, 1}, {1, 1}};
    for (auto _ : state) benchmark::DoNotOptimize(quadratic_variation_rates(spec, x, modes));
}

void BM_SpectralStep(benchmark::State &state)
{
    SolverConfig c;
    c.n = int(state.range(0));
    SpectralSolver solver(c);
    SpectralVorticity f = init_field(DensitySpec::default_experiment(), c.n);
    for (auto _ : state) solver.step(f);
}

} // namespace

BENCHMARK(BM_DriftSerial)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DriftParallel)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NoiseDirect)->Args({1000, 64})->Args({1000, 256})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_NoiseSpectral)->Args({1000, 64})->Args({1000, 256})->Args({4000, 4000})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QuadraticVariation)->Args({1000, 256})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SpectralStep)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
