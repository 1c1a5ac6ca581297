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

#include "vortexmf/config.hpp"
#include "vortexmf/diagnostics.hpp"
#include "vortexmf/dynamics.hpp"
#include "vortexmf/kernel.hpp"
#include "vortexmf/ns_spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace vortexmf {

/// Progress messages from long runs; may be empty.
using ProgressSink = std::function<void(const std::string &)>;

/// Simulation settings for one N of an experiment.
SimulationConfig simulation_config(const ExperimentConfig &config, std::size_t n);

/// Runs realizations 0..R-1 concurrently (one realization per worker, results
/// indexed by realization). `observer_for(r)` may supply a per-realization observer.
std::vector<SimulationResult> run_realizations(const ExperimentConfig &config, std::size_t n,
                                               const KernelEvaluator &kernel,
                                               const std::function<StepObserver(std::size_t)> &observer_for = {});

/// Mean and standard error of a sample.
struct MeanSe {
    double mean = 0.0;
    double se = 0.0;
};
MeanSe mean_se(const std::vector<double> &v);

/// True if v decreases along the index, allowing at most one inversion whose size is
/// within the combined standard error of the two entries.
bool decreasing_within_se(const std::vector<double> &v, const std::vector<double> &se);

/// ((N-1)/N) * double integral (c0 - G(x - y)) f0(x) f0(y), the t = 0 mean of H_N for
/// i.i.d. f0 samples, by Gauss-Legendre quadrature against the autocorrelation of f0.
double hamiltonian_initial_mean(const DensitySpec &f0, const KernelEvaluator &kernel, std::size_t n);

struct LadderEntry {
    std::size_t n = 0;
    std::size_t completed = 0;
    bool complete = true;
    std::vector<std::string> failures;
    double seconds = 0.0;

    /// rms[t][m]: sqrt(mean over realizations of (<S,e_m> - <xi,e_m>)^2).
    std::vector<std::vector<double>> rms;
    /// RMS over modes and times t > 0, with its standard error.
    MeanSe aggregate;

    /// E sup_t |M_t|^2 per martingale mode.
    std::vector<MeanSe> martingale_sup2;
    /// Mean of H_N per record.
    std::vector<MeanSe> hamiltonian;
    double hamiltonian_oracle = 0.0;

    std::size_t concentration_checked = 0;
    std::size_t concentration_held = 0;
};

struct LadderReport {
    std::vector<Mode> modes;
    std::vector<std::size_t> steps;
    std::vector<double> times;
    /// pde[t][m]; empty when no reference was computed.
    std::vector<std::vector<double>> pde;
    std::vector<LadderEntry> entries;
    double martingale_bound = 0.0; // 16 pi^2 4 nu |k|^2 T for the first martingale mode
};

/// Reference weak pairings <xi_t, e_m> at the given particle times.
std::vector<std::vector<double>> pde_reference(const ExperimentConfig &config, const std::vector<double> &times,
                                               const std::vector<Mode> &modes);

/// Convergence, martingale and Hamiltonian statistics over the N ladder. The PDE
/// reference is solved when with_pde is set. Aggregates use completed realizations only.
LadderReport run_ladder(const ExperimentConfig &config, const KernelEvaluator &kernel, bool with_pde,
                        const ProgressSink &progress = {});

struct EntropyReport {
    std::size_t n = 0;
    std::size_t realizations = 0;
    int bins = 0;
    std::vector<double> times;
    std::vector<double> h2;
    std::vector<std::uint64_t> samples;
    double oracle = 0.0; // binned entropy of f0 (x) f0
};

/// Pooled pair-histogram entropy at every scheduled time for the first N. Throws
/// ConfigError before running when R N (N-1) < 100 bins^4.
EntropyReport run_entropy(const ExperimentConfig &config, const KernelEvaluator &kernel,
                          const ProgressSink &progress = {});

struct MomentReport {
    std::size_t n = 0;
    std::size_t seeds = 0;
    std::vector<Mode> modes;
    std::vector<MomentScan> scans;
};

/// Fourth moments of increments of <S, e_m> over the configured lags, one seed per
/// realization, for the first N.
MomentReport run_moments(const ExperimentConfig &config, const KernelEvaluator &kernel,
                         const ProgressSink &progress = {});

} // namespace vortexmf
