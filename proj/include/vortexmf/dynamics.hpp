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

#pragma once

#include "vortexmf/density.hpp"
#include "vortexmf/diagnostics.hpp"
#include "vortexmf/error.hpp"
#include "vortexmf/kernel.hpp"
#include "vortexmf/noise_field.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace vortexmf {

/// A step produced a non-finite position.
class StepError : public Error {
public:
    StepError(const std::string &what, double min_distance)
        : Error(what), min_distance_(min_distance) {}
    double min_distance() const { return min_distance_; }

private:
    double min_distance_;
};

struct IntegratorConfig {
    double dt = 1e-3;
    std::size_t n_steps = 0;
    /// Only Euler-Maruyama is provided.
    std::string scheme = "euler-maruyama";
    double delta_min = KernelEvaluator::default_delta_min;

    void validate() const;
};

/// Per-step by-products, for diagnostics that need the same noise.
struct StepInfo {
    std::vector<Vec2> drift;
    std::vector<Vec2> noise;
    double min_distance = 0.0;
};

/// One Euler-Maruyama step x_i <- wrap(x_i + drift_i dt + noise(x_i)). Every particle
/// sees the same increment, evaluated at its own position. For this system the
/// Stratonovich correction vanishes (the noise fields are divergence free and act
/// identically on each particle), so no correction term is added.
/// Throws StepError on a non-finite position.
VortexEnsemble em_step(const VortexEnsemble &ensemble, const IntegratorConfig &config,
                       const KernelEvaluator &kernel, const NoiseField &noise,
                       const NoiseIncrement &inc, StepInfo *info = nullptr,
                       NoiseBackend backend = NoiseBackend::automatic);

struct SimulationConfig {
    DensitySpec f0 = DensitySpec::default_experiment();
    std::size_t n = 100;
    IntegratorConfig integrator;
    /// Steps at which records are taken; empty selects 50 evenly spaced records.
    std::vector<std::size_t> schedule;
    std::uint64_t seed = 0;
    std::uint32_t realization = 0;
    DiagnosticsConfig diagnostics;
    NoiseBackend backend = NoiseBackend::automatic;
};

struct SimulationResult {
    std::vector<DiagnosticsRecord> records;
    bool complete = true;
    std::string failure;
};

/// Observer called with the ensemble after every step (and once at step 0).
using StepObserver = std::function<void(const VortexEnsemble &, std::size_t step)>;

/// Steps that simulate() records for this configuration.
std::vector<std::size_t> resolved_schedule(const SimulationConfig &config);

/// Runs one realization. Deterministic in (config, seed, realization). A failed step
/// ends the run early with complete = false and the records gathered so far.
SimulationResult simulate(const SimulationConfig &config, const KernelEvaluator &kernel,
                          const NoiseField &noise, const StepObserver &observer = {});

/// Diagnostics of one ensemble snapshot; martingale fields copied from state.
DiagnosticsRecord make_record(const VortexEnsemble &ensemble, std::size_t step,
                              const DiagnosticsConfig &config, const KernelEvaluator &kernel,
                              const MartingaleState &state, double min_distance);

} // namespace vortexmf
