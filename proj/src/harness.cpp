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


#include "vortexmf/harness.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace vortexmf {

namespace {

constexpr double pi = std::numbers::pi;

std::string format_progress(std::size_t n, std::size_t done, std::size_t total)
{
    std::ostringstream s;
    s << "N = " << n << ": realization " << done << "/" << total;
    return s.str();
}

} // namespace

SimulationConfig simulation_config(const ExperimentConfig &config, std::size_t n)
{
    SimulationConfig s;
    s.f0 = config.f0;
    s.n = n;
    s.integrator.dt = config.dt;
    s.integrator.n_steps = config.n_steps();
    s.integrator.delta_min = config.delta_min;
    s.schedule = config.schedule();
    s.seed = config.seed;
    s.diagnostics = config.diagnostics;
    s.backend = config.backend;
    return s;
}

std::vector<SimulationResult> run_realizations(const ExperimentConfig &config, std::size_t n,
                                               const KernelEvaluator &kernel,
                                               const std::function<StepObserver(std::size_t)> &observer_for)
{
    const std::size_t r_count = config.realizations;
    const NoiseField noise(config.noise_for(n));
    const SimulationConfig base = simulation_config(config, n);
    std::vector<SimulationResult> out(r_count);
    const long long rr = static_cast<long long>(r_count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long r = 0; r < rr; ++r) {
        const std::size_t ri = static_cast<std::size_t>(r);
        try {
            SimulationConfig sc = base;
            sc.realization = static_cast<std::uint32_t>(ri);
            StepObserver obs = observer_for ? observer_for(ri) : StepObserver{};
            out[ri] = simulate(sc, kernel, noise, obs);
        } catch (const std::exception &e) {
            out[ri] = SimulationResult{};
            out[ri].complete = false;
            out[ri].failure = e.what();
        }
    }
    return out;
}

MeanSe mean_se(const std::vector<double> &v)
{
    MeanSe m;
    if (v.empty()) return {NAN, NAN};
    double s = 0.0;
    for (double x : v) s += x;
    m.mean = s / double(v.size());
    if (v.size() < 2) {
        m.se = NAN;
        return m;
    }
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.se = std::sqrt(ss / double(v.size() - 1) / double(v.size()));
    return m;
}

bool decreasing_within_se(const std::vector<double> &v, const std::vector<double> &se)
{
    int inversions = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!(v[i] >= v[i - 1])) continue;
        ++inversions;
        double tol = std::hypot(se[i - 1], se[i]);
        if (!(v[i] - v[i - 1] <= tol)) return false;
    }
    return inversions <= 1;
}

double hamiltonian_initial_mean(const DensitySpec &f0, const KernelEvaluator &kernel, std::size_t n)
{
    using cplx = std::complex<double>;
    // Complex Fourier coefficients of f0 on the upper half plane; f0 is real.
    std::vector<std::pair<Mode, cplx>> hat;
    auto add = [&](Mode k, cplx v) {
        for (auto &[m, c] : hat)
            if (m == k) {
                c += v;
                return;
            }
        hat.emplace_back(k, v);
    };
    for (const DensityTerm &t : f0.terms()) {
        double a = t.amplitude / std::numbers::sqrt2;
        if (in_upper(t.k)) add(t.k, a);
        else add({-t.k.k1, -t.k.k2}, cplx(0.0, a));
    }
    // Autocorrelation A(z) = 1 + sum 2 |f_hat(m)|^2 cos(2 pi m.z); integral of A is 1.
    auto autocorr = [&](double z1, double z2) {
        double s = 1.0;
        for (const auto &[m, c] : hat) s += 2.0 * std::norm(c) * std::cos(2.0 * pi * (m.k1 * z1 + m.k2 * z2));
        return s;
    };
    // Panels graded towards the log singularity at the origin.
    const std::vector<double> half{0.0, 1.0 / 4096, 1.0 / 1024, 1.0 / 256, 1.0 / 64, 1.0 / 16, 1.0 / 4, 0.5};
    std::vector<double> edges;
    for (std::size_t i = half.size(); i-- > 1;) edges.push_back(-half[i]);
    for (double h : half) edges.push_back(h);
    using Rule = boost::math::quadrature::gauss<double, 30>;
    double integral = 0.0;
    for (std::size_t a = 0; a + 1 < edges.size(); ++a)
        for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
            integral += Rule::integrate(
                [&](double z1) {
                    return Rule::integrate(
                        [&](double z2) { return kernel.green({z1, z2}) * autocorr(z1, z2); }, edges[b],
                        edges[b + 1]);
                },
                edges[a], edges[a + 1]);
        }
    const double nn = double(n);
    return (nn - 1.0) / nn * (kernel.c0() - integral);
}

std::vector<std::vector<double>> pde_reference(const ExperimentConfig &config, const std::vector<double> &times,
                                               const std::vector<Mode> &modes)
{
    std::vector<std::size_t> steps;
    for (double t : times) {
        auto s = static_cast<std::size_t>(std::llround(t / config.pde.dt));
        if (std::abs(double(s) * config.pde.dt - t) > 1e-9 * std::max(1.0, t))
            throw ConfigError("experiment.pde.dt: record times must be multiples of the PDE step");
        steps.push_back(s);
    }
    std::vector<PdeRecord> recs = solve(config.f0, config.pde, steps, modes);
    std::vector<std::vector<double>> out;
    for (std::size_t s : steps)
        for (const PdeRecord &r : recs)
            if (r.step == s) {
                out.push_back(r.modes);
                break;
            }
    return out;
}

LadderReport run_ladder(const ExperimentConfig &config, const KernelEvaluator &kernel, bool with_pde,
                        const ProgressSink &progress)
{
    config.validate();
    LadderReport rep;
    rep.modes = modes_in_disk(config.diagnostics.mode_radius);
    rep.steps = config.schedule();
    for (std::size_t s : rep.steps) rep.times.push_back(double(s) * config.dt);
    if (with_pde) {
        if (progress) progress("solving the PDE reference");
        rep.pde = pde_reference(config, rep.times, rep.modes);
    }
    if (!config.diagnostics.martingale_modes.empty()) {
        Mode k = config.diagnostics.martingale_modes.front();
        rep.martingale_bound = 16.0 * pi * pi * 4.0 * config.nu * double(k.k1 * k.k1 + k.k2 * k.k2) * config.t_final;
    }
    const std::size_t nt = rep.steps.size();
    const std::size_t nm = rep.modes.size();
    const double r_conc = config.diagnostics.concentration_r;

    for (std::size_t n : config.n_values) {
        auto t0 = std::chrono::steady_clock::now();
        LadderEntry e;
        e.n = n;
        std::vector<SimulationResult> runs = run_realizations(config, n, kernel);
        std::vector<const SimulationResult *> ok;
        for (const SimulationResult &r : runs) {
            if (r.complete && r.records.size() == nt) ok.push_back(&r);
            else {
                e.complete = false;
                e.failures.push_back(r.failure.empty() ? "incomplete record set" : r.failure);
            }
        }
        e.completed = ok.size();

        if (with_pde && !ok.empty()) {
            e.rms.assign(nt, std::vector<double>(nm, 0.0));
            std::vector<double> per_run;
            for (const SimulationResult *r : ok) {
                double q = 0.0;
                for (std::size_t t = 0; t < nt; ++t)
                    for (std::size_t m = 0; m < nm; ++m) {
                        double d = r->records[t].modes[m] - rep.pde[t][m];
                        e.rms[t][m] += d * d;
                        if (t > 0) q += d * d;
                    }
                per_run.push_back(q / double((nt - 1) * nm));
            }
            for (auto &row : e.rms)
                for (double &v : row) v = std::sqrt(v / double(ok.size()));
            MeanSe q = mean_se(per_run);
            e.aggregate.mean = std::sqrt(q.mean);
            e.aggregate.se = q.se / (2.0 * e.aggregate.mean);
        }

        for (std::size_t q = 0; q < config.diagnostics.martingale_modes.size(); ++q) {
            std::vector<double> s;
            for (const SimulationResult *r : ok) {
                double v = r->records.back().martingale_sup[q];
                s.push_back(v * v);
            }
            e.martingale_sup2.push_back(mean_se(s));
        }

        if (config.diagnostics.hamiltonian) {
            for (std::size_t t = 0; t < nt; ++t) {
                std::vector<double> h;
                for (const SimulationResult *r : ok) h.push_back(r->records[t].hamiltonian);
                e.hamiltonian.push_back(mean_se(h));
            }
            e.hamiltonian_oracle = hamiltonian_initial_mean(config.f0, kernel, n);
            if (config.diagnostics.concentration)
                for (const SimulationResult *r : ok)
                    for (const DiagnosticsRecord &rec : r->records) {
                        ++e.concentration_checked;
                        if (rec.concentration <= concentration_bound(n, rec.hamiltonian, r_conc))
                            ++e.concentration_held;
                    }
        }
        e.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (progress) {
            std::ostringstream s;
            s << "N = " << n << ": " << e.completed << "/" << runs.size() << " realizations in " << e.seconds << " s";
            progress(s.str());
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

EntropyReport run_entropy(const ExperimentConfig &config, const KernelEvaluator &kernel, const ProgressSink &progress)
{
    config.validate();
    EntropyReport rep;
    rep.n = config.n_values.front();
    rep.realizations = config.realizations;
    rep.bins = config.entropy_bins;
    const double cells = std::pow(double(rep.bins), 4);
    const double pairs = double(rep.realizations) * double(rep.n) * double(rep.n - 1);
    if (pairs < 100.0 * cells)
        throw ConfigError("experiment.realizations: pooled pair samples " + std::to_string(pairs) +
                          " below 100 x bins^4 = " + std::to_string(100.0 * cells));

    const std::vector<std::size_t> steps = config.schedule();
    std::vector<PairHistogram> pooled(steps.size(), PairHistogram(rep.bins));
    std::size_t done = 0;
    auto observer_for = [&](std::size_t) -> StepObserver {
        return [&](const VortexEnsemble &ens, std::size_t step) {
            auto it = std::find(steps.begin(), steps.end(), step);
            if (it == steps.end()) return;
            PairHistogram h(rep.bins);
            h.add(ens.positions);
            // Integer counts: the merge order does not affect the result.
#pragma omp critical(vortexmf_entropy_merge)
            pooled[std::size_t(it - steps.begin())].merge(h);
        };
    };
    std::vector<SimulationResult> runs = run_realizations(config, rep.n, kernel, observer_for);
    for (const SimulationResult &r : runs) {
        if (!r.complete) throw Error("entropy run: realization failed: " + r.failure);
        ++done;
    }
    if (progress) progress(format_progress(rep.n, done, runs.size()));
    for (std::size_t t = 0; t < steps.size(); ++t) {
        rep.times.push_back(double(steps[t]) * config.dt);
        rep.h2.push_back(entropy2_estimate(pooled[t]));
        rep.samples.push_back(pooled[t].total());
    }
    rep.oracle = binned_product_entropy(config.f0, rep.bins);
    return rep;
}

MomentReport run_moments(const ExperimentConfig &config, const KernelEvaluator &kernel, const ProgressSink &progress)
{
    config.validate();
    MomentReport rep;
    rep.n = config.n_values.front();
    rep.seeds = config.realizations;
    rep.modes = config.moment_modes;
    const std::size_t horizon = config.n_steps() + 1;
    // series[mode][seed][step]
    std::vector<std::vector<std::vector<double>>> series(
        rep.modes.size(), std::vector<std::vector<double>>(rep.seeds, std::vector<double>(horizon, 0.0)));
    auto observer_for = [&](std::size_t r) -> StepObserver {
        return [&, r](const VortexEnsemble &ens, std::size_t step) {
            for (std::size_t m = 0; m < rep.modes.size(); ++m)
                series[m][r][step] = empirical_mode(ens.positions, rep.modes[m]);
        };
    };
    std::vector<SimulationResult> runs = run_realizations(config, rep.n, kernel, observer_for);
    for (const SimulationResult &r : runs)
        if (!r.complete) throw Error("moment scan: realization failed: " + r.failure);
    if (progress) progress(format_progress(rep.n, runs.size(), runs.size()));
    for (std::size_t m = 0; m < rep.modes.size(); ++m)
        rep.scans.push_back(increment_moment_scan(series[m], config.moment_lags));
    return rep;
}

} // namespace vortexmf
