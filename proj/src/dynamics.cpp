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

#include "vortexmf/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace vortexmf {

namespace {
constexpr std::size_t default_record_count = 50;
} // namespace

void IntegratorConfig::validate() const
{
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator.dt: must be positive");
    if (scheme != "euler-maruyama")
        throw ConfigError("integrator.scheme: only euler-maruyama is available, got '" + scheme + "'");
    if (!(delta_min > 0.0)) throw ConfigError("integrator.delta_min: must be positive");
}

VortexEnsemble em_step(const VortexEnsemble &ensemble, const IntegratorConfig &config,
                       const KernelEvaluator &kernel, const NoiseField &noise,
                       const NoiseIncrement &inc, StepInfo *info, NoiseBackend backend)
{
    const std::size_t n = ensemble.size();
    double min_d = 0.0;
    std::vector<Vec2> drift = pairwise_drift(kernel, ensemble.positions, &min_d);
    std::vector<Vec2> dn = noise.displacements(inc, ensemble.positions, backend);

    VortexEnsemble next;
    next.realization = ensemble.realization;
    next.time = ensemble.time + config.dt;
    next.positions.resize(n);
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 p = ensemble.positions[i].vec() + config.dt * drift[i] + dn[i];
        if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
            finite = false;
            break;
        }
        next.positions[i] = TorusPoint::wrap_unchecked(p);
    }
    if (!finite) {
        std::ostringstream msg;
        msg << "non-finite position at t = " << next.time << " (min pair distance " << min_d << ")";
        throw StepError(msg.str(), min_d);
    }
    if (info) {
        info->drift = std::move(drift);
        info->noise = std::move(dn);
        info->min_distance = min_d;
    }
    return next;
}

std::vector<std::size_t> resolved_schedule(const SimulationConfig &config)
{
    const std::size_t steps = config.integrator.n_steps;
    std::vector<std::size_t> s = config.schedule;
    if (s.empty()) {
        std::size_t count = std::min(default_record_count, std::max<std::size_t>(steps, 1));
        for (std::size_t j = 0; j <= count; ++j) s.push_back(steps == 0 ? 0 : (j * steps) / count);
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    if (!s.empty() && s.back() > steps) throw ConfigError("schedule: record step beyond n_steps");
    return s;
}

DiagnosticsRecord make_record(const VortexEnsemble &ensemble, std::size_t step,
                              const DiagnosticsConfig &config, const KernelEvaluator &kernel,
                              const MartingaleState &state, double min_distance)
{
    const auto &x = ensemble.positions;
    DiagnosticsRecord r;
    r.step = step;
    r.time = ensemble.time;
    for (Mode k : modes_in_disk(config.mode_radius)) r.modes.push_back(empirical_mode(x, k));
    if (config.hamiltonian) {
        r.hamiltonian = hamiltonian(x, kernel);
        r.energy = interaction_energy(x, kernel);
    }
    r.hnorm = sobolev_neg_norm(x, config.sobolev_s, config.sobolev_window);
    if (config.concentration) r.concentration = concentration_stat(x, config.concentration_r);
    r.martingale = state.value;
    r.martingale_sup = state.sup_abs;
    r.qv = state.qv;
    r.min_distance = min_distance;
    return r;
}

SimulationResult simulate(const SimulationConfig &config, const KernelEvaluator &kernel,
                          const NoiseField &noise, const StepObserver &observer)
{
    config.integrator.validate();
    if (config.n < 1) throw ConfigError("N must be >= 1");
    const std::vector<std::size_t> schedule = resolved_schedule(config);
    const ThetaSpec &theta = *noise.spec().theta;
    const double dt = config.integrator.dt;

    SimulationResult result;
    VortexEnsemble ens = sample_initial(config.f0, config.n, config.seed, config.realization);
    MartingaleState mart(config.diagnostics.martingale_modes);
    // Running minimum pair distance since the previous record.
    double window_min = min_pair_distance(ens.positions);
    std::size_t next_record = 0;

    auto record_if_due = [&](std::size_t step) {
        if (next_record < schedule.size() && schedule[next_record] == step) {
            double current = min_pair_distance(ens.positions);
            double md = config.n > 1 ? std::min(window_min, current) : 0.0;
            result.records.push_back(make_record(ens, step, config.diagnostics, kernel, mart, md));
            window_min = current;
            ++next_record;
        }
    };

    if (observer) observer(ens, 0);
    record_if_due(0);
    for (std::size_t step = 0; step < config.integrator.n_steps; ++step) {
        NoiseIncrement inc = sample_increment(theta, dt, config.seed, config.realization,
                                              std::uint32_t(step));
        StepInfo info;
        try {
            VortexEnsemble next = em_step(ens, config.integrator, kernel, noise, inc, &info, config.backend);
            std::vector<double> rates;
            if (config.diagnostics.track_qv && noise.spec().nu > 0.0)
                rates = quadratic_variation_rates(noise.spec(), ens.positions, mart.modes);
            martingale_accumulate(mart, ens.positions, info.noise, rates, dt);
            ens = std::move(next);
            // Times from the step count, so records do not accumulate rounding.
            ens.time = double(step + 1) * dt;
        } catch (const StepError &e) {
            result.complete = false;
            result.failure = e.what();
            return result;
        }
        if (config.n > 1) window_min = std::min(window_min, info.min_distance);
        if (observer) observer(ens, step + 1);
        record_if_due(step + 1);
    }
    return result;
}

} // namespace vortexmf
