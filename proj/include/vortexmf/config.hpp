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
#include "vortexmf/noise.hpp"
#include "vortexmf/noise_field.hpp"
#include "vortexmf/ns_spectral.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

namespace vortexmf {

enum class ExperimentKind {
    simulate,
    solve,
    converge,
    martingale,
    hamiltonian,
    entropy,
    moments,
    validate_kernel,
    validate_noise,
    validate_ns
};

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string &name);

/// Noise coefficients; the cutoff either follows N or is fixed.
struct ThetaConfig {
    ThetaProfile::Kind profile = ThetaProfile::Kind::inverse;
    double value = 1.0;
    bool cutoff_follows_n = true;
    int cutoff = 0;

    int cutoff_for(std::size_t n) const;
    std::shared_ptr<const ThetaSpec> build(std::size_t n) const;
};

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::simulate;
    std::uint64_t seed = 0;

    DensitySpec f0 = DensitySpec::default_experiment();
    double nu = 0.05;
    ThetaConfig theta;
    NoiseBackend backend = NoiseBackend::automatic;

    double dt = 1e-3;
    double t_final = 0.2;
    double delta_min = 1e-6;

    std::vector<std::size_t> n_values{250, 1000, 4000};
    std::size_t realizations = 16;
    /// Evenly spaced records after t = 0.
    std::size_t records = 10;
    DiagnosticsConfig diagnostics;

    int kernel_cutoff = 128;
    int kernel_table = 512;
    SolverConfig pde;

    int entropy_bins = 16;
    std::vector<int> moment_lags{1, 2, 5, 10};
    std::vector<Mode> moment_modes{{1, 0}};

    std::filesystem::path out_dir = "out";
    int threads = 0;

    std::size_t n_steps() const;
    /// Steps 0 and `records` evenly spaced steps up to n_steps().
    std::vector<std::size_t> schedule() const;
    NoiseSpec noise_for(std::size_t n) const;

    /// Throws ConfigError naming the offending field.
    void validate() const;
};

/// Parses a JSON document with optional sections density, noise, integrator and
/// experiment. Unknown keys are rejected. Missing keys take the defaults above.
ExperimentConfig parse_config(const std::string &json_text);
ExperimentConfig load_config(const std::filesystem::path &path);

/// The fully resolved configuration as JSON (pretty printed, stable key order).
std::string dump_config(const ExperimentConfig &config);

/// Writes config_echo.json into the output directory.
void write_config_echo(const ExperimentConfig &config);

} // namespace vortexmf
