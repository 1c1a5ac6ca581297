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


// Command-line front end: validation suites and the experiments.

#include "vortexmf/config.hpp"
#include "vortexmf/harness.hpp"
#include "vortexmf/report.hpp"
#include "vortexmf/validation.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

using namespace vortexmf;
namespace fs = std::filesystem;

namespace {

struct Common {
    std::string config;
    std::string out;
    int threads = 0;
    std::optional<std::uint64_t> seed;
};

void add_common(CLI::App *app, Common &c, bool config_required)
{
    auto *opt = app->add_option("--config", c.config, "JSON configuration");
    if (config_required) opt->required()->check(CLI::ExistingFile);
    app->add_option("--out", c.out, "Output directory (overrides experiment.out)");
    app->add_option("--threads", c.threads, "Worker threads (0: OpenMP default)")->check(CLI::NonNegativeNumber);
    app->add_option("--seed", c.seed, "Seed (overrides experiment.seed)");
}

ExperimentConfig resolve(const Common &c, ExperimentKind kind)
{
    ExperimentConfig cfg = c.config.empty() ? ExperimentConfig{} : load_config(c.config);
    cfg.kind = kind;
    if (!c.out.empty()) cfg.out_dir = c.out;
    if (c.seed) cfg.seed = *c.seed;
    if (c.threads > 0) cfg.threads = c.threads;
    cfg.validate();
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    write_config_echo(cfg);
    return cfg;
}

void progress(const std::string &msg) { std::cerr << "[vortexmf] " << msg << std::endl; }

int report_checks(const std::vector<SummaryRow> &rows)
{
    bool ok = true;
    for (const SummaryRow &r : rows) {
        std::printf("%-34s %-4s value %.6g threshold %.6g\n", r.check.c_str(), r.pass ? "PASS" : "FAIL", r.value,
                    r.threshold);
        ok = ok && r.pass;
    }
    return ok ? 0 : 3;
}

int report_validation(const ValidationReport &rep, const std::string &path)
{
    if (!path.empty()) {
        if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
        write_validation_csv(path, rep);
    }
    for (const ValidationCheck &c : rep.checks)
        std::printf("%-34s %-4s value %.6g tolerance %.6g\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.value,
                    c.tolerance);
    return rep.all_pass() ? 0 : 3;
}

void write_run_info(const ExperimentConfig &cfg, double seconds)
{
    std::ofstream out(cfg.out_dir / "run_info.txt");
    out << "experiment " << to_string(cfg.kind) << "\nbuild " << build_id() << "\nthreads " << omp_get_max_threads()
        << "\nseconds " << seconds << "\n";
}

KernelEvaluator make_kernel(const ExperimentConfig &cfg)
{
    return KernelEvaluator(cfg.kernel_cutoff, cfg.kernel_table, cfg.delta_min);
}

int run_simulate(const ExperimentConfig &cfg, bool trajectory)
{
    const KernelEvaluator kernel = make_kernel(cfg);
    std::vector<SummaryRow> rows;
    const std::vector<std::size_t> steps = cfg.schedule();
    for (std::size_t n : cfg.n_values) {
        const fs::path dir = cfg.n_values.size() == 1 ? cfg.out_dir : cfg.out_dir / ("N" + std::to_string(n));
        fs::create_directories(dir);
        std::function<StepObserver(std::size_t)> observer_for;
        if (trajectory) {
            observer_for = [&](std::size_t r) -> StepObserver {
                auto csv = std::make_shared<CsvWriter>(dir / ("trajectory_" + std::to_string(r) + ".csv"),
                                                       std::vector<std::string>{"t", "i", "x1", "x2"},
                                                       Provenance{n, cfg.realizations, cfg.seed}, true);
                return [csv, r, &steps, &cfg](const VortexEnsemble &ens, std::size_t step) {
                    if (std::find(steps.begin(), steps.end(), step) == steps.end()) return;
                    for (std::size_t i = 0; i < ens.positions.size(); ++i)
                        csv->row({format_double(double(step) * cfg.dt), std::to_string(i),
                                  format_double(ens.positions[i].x1()), format_double(ens.positions[i].x2())},
                                 std::uint32_t(r));
                };
            };
        }
        std::vector<SimulationResult> runs = run_realizations(cfg, n, kernel, observer_for);
        std::size_t done = 0;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            write_diagnostics_csv(dir / ("diagnostics_" + std::to_string(r) + ".csv"), runs[r].records,
                                  cfg.diagnostics, {n, cfg.realizations, cfg.seed}, std::uint32_t(r));
            if (runs[r].complete) ++done;
            else progress("N = " + std::to_string(n) + ", realization " + std::to_string(r) + ": " + runs[r].failure);
        }
        rows.push_back({"complete_N" + std::to_string(n), double(done), double(runs.size()), done == runs.size(), n});
    }
    write_summary_csv(cfg.out_dir / "summary.csv", rows, {0, cfg.realizations, cfg.seed});
    return report_checks(rows);
}

int run_solve(const ExperimentConfig &cfg)
{
    std::vector<double> times;
    for (std::size_t s : cfg.schedule()) times.push_back(double(s) * cfg.dt);
    const std::vector<Mode> modes = modes_in_disk(cfg.diagnostics.mode_radius);
    auto values = pde_reference(cfg, times, modes);
    write_pde_modes_csv(cfg.out_dir / "pde_modes.csv", times, modes, values,
                        {std::size_t(cfg.pde.n), 1, cfg.seed});
    std::printf("pde_modes.csv: %zu times, %zu modes\n", times.size(), modes.size());
    return 0;
}

int run_ladder_cmd(const ExperimentConfig &cfg, bool with_pde)
{
    const KernelEvaluator kernel = make_kernel(cfg);
    LadderReport rep = run_ladder(cfg, kernel, with_pde, progress);
    write_ladder_csvs(cfg.out_dir, rep, cfg);
    if (with_pde)
        write_pde_modes_csv(cfg.out_dir / "pde_modes.csv", rep.times, rep.modes, rep.pde,
                            {std::size_t(cfg.pde.n), 1, cfg.seed});
    write_ladder_plots(cfg.out_dir, rep);
    std::vector<SummaryRow> rows = ladder_checks(rep, with_pde);
    write_summary_csv(cfg.out_dir / "summary.csv", rows, {0, cfg.realizations, cfg.seed});
    return report_checks(rows);
}

int run_entropy_cmd(const ExperimentConfig &cfg)
{
    const KernelEvaluator kernel = make_kernel(cfg);
    EntropyReport rep = run_entropy(cfg, kernel, progress);
    write_entropy_csv(cfg.out_dir / "entropy.csv", rep, cfg.seed);
    double rise = -INFINITY;
    for (double h : rep.h2) rise = std::max(rise, h - rep.h2.front());
    double rel = std::abs(rep.h2.front() - rep.oracle) / std::abs(rep.oracle);
    std::vector<SummaryRow> rows{{"entropy_rise", rise, 0.05, rise <= 0.05},
                                 {"entropy_t0_oracle", rel, 0.1, rel <= 0.1}};
    write_summary_csv(cfg.out_dir / "summary.csv", rows, {rep.n, rep.realizations, cfg.seed});
    write_svg_plot(cfg.out_dir / "plots" / "entropy_vs_t.svg", "Pair entropy estimate", "t", "h2",
                   {{"h2 estimate", rep.times, rep.h2}}, false, false);
    return report_checks(rows);
}

int run_moments_cmd(const ExperimentConfig &cfg)
{
    const KernelEvaluator kernel = make_kernel(cfg);
    MomentReport rep = run_moments(cfg, kernel, progress);
    write_moments_csv(cfg.out_dir / "moments.csv", rep, cfg.moment_lags, cfg.seed);
    std::vector<SummaryRow> rows;
    std::vector<PlotSeries> plot;
    for (std::size_t m = 0; m < rep.modes.size(); ++m) {
        double s = rep.scans[m].slope;
        rows.push_back({"moment_slope_" + mode_label(rep.modes[m]), s, 2.0, std::abs(s - 2.0) <= 0.4});
        PlotSeries p{"k = " + mode_label(rep.modes[m]), {}, rep.scans[m].moments};
        for (int l : cfg.moment_lags) p.x.push_back(double(l) * cfg.dt);
        plot.push_back(std::move(p));
    }
    write_summary_csv(cfg.out_dir / "summary.csv", rows, {rep.n, rep.seeds, cfg.seed});
    write_svg_plot(cfg.out_dir / "plots" / "moments_vs_lag.svg", "Fourth moment of increments", "lag",
                   "E |dX|^4", plot, true, true);
    return report_checks(rows);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"vortexmf: point vortices with environmental transport noise"};
    app.require_subcommand(1);
    app.set_version_flag("--version", build_id());

    Common common;
    int k_cutoff = 128, k_resolution = 512, n_cutoff = 64, n_points = 1000;
    double n_nu = 0.05;
    std::string report;
    bool trajectory = false;

    auto *vk = app.add_subcommand("validate-kernel", "Check the Biot-Savart evaluator");
    vk->add_option("--cutoff", k_cutoff, "Fourier cutoff of the Ewald sum")->check(CLI::Range(64, 4096));
    vk->add_option("--resolution", k_resolution, "Remainder table resolution")->check(CLI::Range(256, 8192));
    vk->add_option("--report", report, "CSV report path");
    add_common(vk, common, false);

    auto *vn = app.add_subcommand("validate-noise", "Check the noise covariance identities");
    vn->add_option("--cutoff", n_cutoff, "Noise cutoff")->check(CLI::Range(1, 4096));
    vn->add_option("--nu", n_nu, "Noise intensity")->check(CLI::NonNegativeNumber);
    vn->add_option("--points", n_points, "Positions for the uniform bound")->check(CLI::Range(1, 1000000));
    vn->add_option("--report", report, "CSV report path");
    add_common(vn, common, false);

    auto *vs = app.add_subcommand("validate-ns", "Check the spectral Navier-Stokes solver");
    vs->add_option("--report", report, "CSV report path");
    add_common(vs, common, false);

    auto *sim = app.add_subcommand("simulate", "Run realizations and write per-realization diagnostics");
    sim->add_flag("--trajectory", trajectory, "Also write positions at recorded steps");
    add_common(sim, common, true);

    struct Sub {
        const char *name;
        const char *help;
        ExperimentKind kind;
    };
    const Sub subs[] = {
        {"solve", "Solve the vorticity equation and write pde_modes.csv", ExperimentKind::solve},
        {"converge", "Convergence of the empirical measure across the N ladder", ExperimentKind::converge},
        {"martingale", "Second moment of the martingale term across the N ladder", ExperimentKind::martingale},
        {"hamiltonian", "Hamiltonian statistics across the N ladder", ExperimentKind::hamiltonian},
        {"entropy", "Pair entropy estimate over time", ExperimentKind::entropy},
        {"moments", "Fourth-moment scaling of mode increments", ExperimentKind::moments},
    };
    std::vector<std::pair<CLI::App *, ExperimentKind>> experiments;
    for (const Sub &s : subs) {
        auto *cmd = app.add_subcommand(s.name, s.help);
        add_common(cmd, common, true);
        experiments.emplace_back(cmd, s.kind);
    }

    CLI11_PARSE(app, argc, argv);

    try {
        auto t0 = std::chrono::steady_clock::now();
        auto default_report = [&](const char *name) {
            if (!report.empty()) return report;
            return common.out.empty() ? std::string() : (fs::path(common.out) / name).string();
        };
        if (common.threads > 0) omp_set_num_threads(common.threads);
        if (vk->parsed()) return report_validation(validate_kernel(k_cutoff, k_resolution), default_report("kernel.csv"));
        if (vn->parsed())
            return report_validation(validate_noise(n_cutoff, n_nu, n_points), default_report("noise.csv"));
        if (vs->parsed()) return report_validation(validate_ns(), default_report("ns.csv"));

        int status = 0;
        ExperimentConfig cfg;
        if (sim->parsed()) {
            cfg = resolve(common, ExperimentKind::simulate);
            status = run_simulate(cfg, trajectory);
        }
        for (auto &[cmd, kind] : experiments) {
            if (!cmd->parsed()) continue;
            cfg = resolve(common, kind);
            switch (kind) {
            case ExperimentKind::solve: status = run_solve(cfg); break;
            case ExperimentKind::converge: status = run_ladder_cmd(cfg, true); break;
            case ExperimentKind::martingale:
                if (cfg.realizations < 32) throw ConfigError("experiment.realizations: the martingale estimate needs >= 32");
                status = run_ladder_cmd(cfg, false);
                break;
            case ExperimentKind::hamiltonian: status = run_ladder_cmd(cfg, false); break;
            case ExperimentKind::entropy: status = run_entropy_cmd(cfg); break;
            case ExperimentKind::moments: status = run_moments_cmd(cfg); break;
            default: break;
            }
        }
        write_run_info(cfg, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        return status;
    } catch (const ConfigError &e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
