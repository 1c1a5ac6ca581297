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

#include "vortexmf/config.hpp"
#include "vortexmf/error.hpp"
#include "vortexmf/harness.hpp"
#include "vortexmf/kernel.hpp"
#include "vortexmf/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace vortexmf;

namespace {

constexpr double pi = std::numbers::pi;

const KernelEvaluator &evaluator()
{
    static const KernelEvaluator e;
    return e;
}

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.kind = ExperimentKind::converge;
    c.seed = 5;
    c.n_values = {2, 20};
    c.realizations = 3;
    c.dt = 1e-3;
    c.t_final = 0.01;
    c.records = 2;
    c.pde.n = 32;
    c.pde.dt = 1e-3;
    return c;
}

std::vector<std::string> lines_of(const std::filesystem::path &p)
{
    std::ifstream in(p);
    std::vector<std::string> v;
    for (std::string s; std::getline(in, s);) v.push_back(s);
    return v;
}

std::size_t columns(const std::string &line)
{
    return std::size_t(std::count(line.begin(), line.end(), ',')) + 1;
}

std::filesystem::path scratch(const std::string &name)
{
    auto p = std::filesystem::temp_directory_path() / ("vortexmf_unit_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("mean and standard error")
{
    MeanSe m = mean_se({1.0, 2.0, 3.0});
    CHECK(m.mean == 2.0);
    CHECK(m.se == doctest::Approx(1.0 / std::sqrt(3.0)));
    CHECK(std::isnan(mean_se({4.0}).se));
    CHECK(std::isnan(mean_se({}).mean));
}

TEST_CASE("monotone decrease up to one standard error")
{
    CHECK(decreasing_within_se({3, 2, 1}, {0, 0, 0}));
    CHECK(decreasing_within_se({3, 3.05, 1}, {0.1, 0.1, 0.1}));
    CHECK_FALSE(decreasing_within_se({3, 4, 1}, {0.1, 0.1, 0.1}));
    CHECK_FALSE(decreasing_within_se({3, 3.05, 3.1}, {0.1, 0.1, 0.1}));
    CHECK(decreasing_within_se({1, 1}, {0, 0}));
    CHECK_FALSE(decreasing_within_se({1, 1.1}, {0, 0}));
}

TEST_CASE("initial Hamiltonian mean matches the Fourier form")
{
    const KernelEvaluator &k = evaluator();
    for (const DensitySpec &f : {DensitySpec::default_experiment(),
                                 DensitySpec({{{1, 0}, 0.2}, {{2, -1}, 0.1}, {{0, 3}, -0.15}}, 0.0),
                                 DensitySpec::uniform()}) {
        double s = 0.0;
        for (const DensityTerm &t : f.terms())
            s += t.amplitude * t.amplitude / double(t.k.k1 * t.k.k1 + t.k.k2 * t.k.k2);
        for (std::size_t n : {2u, 1000u}) {
            double expect = (double(n) - 1) / double(n) * (k.c0() + s / (4 * pi * pi));
            CHECK(hamiltonian_initial_mean(f, k, n) == doctest::Approx(expect).epsilon(1e-6));
        }
    }
}

TEST_CASE("PDE reference for the default density is pure decay")
{
    ExperimentConfig c = small_config();
    std::vector<double> times{0.0, 0.005, 0.01};
    std::vector<Mode> modes{{1, 0}, {0, -1}, {1, 1}};
    auto ref = pde_reference(c, times, modes);
    REQUIRE(ref.size() == 3);
    for (std::size_t t = 0; t < times.size(); ++t) {
        double d = std::exp(-4 * pi * pi * c.nu * times[t]);
        CHECK(ref[t][0] == doctest::Approx(0.3 * d).epsilon(1e-9));
        CHECK(ref[t][1] == doctest::Approx(-0.3 * d).epsilon(1e-9));
        CHECK(std::abs(ref[t][2]) <= 1e-14);
    }
}

TEST_CASE("ladder with the smallest N runs and is reproducible")
{
    ExperimentConfig c = small_config();
    LadderReport a = run_ladder(c, evaluator(), true);
    LadderReport b = run_ladder(c, evaluator(), true);
    REQUIRE(a.entries.size() == 2);
    CHECK(a.steps == std::vector<std::size_t>{0, 5, 10});
    CHECK(a.modes.size() == modes_in_disk(3).size());
    CHECK(a.martingale_bound == doctest::Approx(16 * pi * pi * 4 * c.nu * c.t_final));
    for (std::size_t i = 0; i < 2; ++i) {
        const LadderEntry &e = a.entries[i];
        CHECK(e.complete);
        CHECK(e.completed == 3);
        CHECK(e.rms.size() == 3);
        CHECK(e.aggregate.mean == b.entries[i].aggregate.mean);
        CHECK(e.hamiltonian.size() == 3);
        CHECK(e.concentration_checked == 9);
        CHECK(e.concentration_held == e.concentration_checked);
        for (const MeanSe &m : e.martingale_sup2) CHECK(m.mean <= a.martingale_bound);
    }

    auto checks = ladder_checks(a, true);
    CHECK_FALSE(checks.empty());
    auto dir = scratch("ladder");
    c.out_dir = dir;
    write_ladder_csvs(dir, a, c);
    write_ladder_plots(dir, a);
    CHECK(std::filesystem::exists(dir / "ladder.csv"));
    CHECK(std::filesystem::exists(dir / "convergence_N2.csv"));
    CHECK(std::filesystem::exists(dir / "hamiltonian_N20.csv"));
    CHECK(std::filesystem::exists(dir / "plots" / "error_vs_N.svg"));
    auto lines = lines_of(dir / "ladder.csv");
    REQUIRE(lines.size() == 3);
    for (const auto &l : lines) CHECK(columns(l) == columns(lines[0]));
    std::filesystem::remove_all(dir);
}

TEST_CASE("zero noise leaves the martingale at zero")
{
    ExperimentConfig c = small_config();
    c.nu = 0.0;
    c.pde.nu = 0.0;
    c.n_values = {20};
    LadderReport r = run_ladder(c, evaluator(), false);
    for (const MeanSe &m : r.entries[0].martingale_sup2) CHECK(m.mean == 0.0);
    CHECK(r.pde.empty());
}

TEST_CASE("entropy run refuses too few samples")
{
    ExperimentConfig c = small_config();
    c.kind = ExperimentKind::entropy;
    c.entropy_bins = 16;
    CHECK_THROWS_AS(run_entropy(c, evaluator()), ConfigError);

    c.entropy_bins = 2;
    c.n_values = {40};
    c.realizations = 2;
    EntropyReport e = run_entropy(c, evaluator());
    CHECK(e.h2.size() == 3);
    CHECK(e.samples[0] == 2u * 40 * 39);
    CHECK(e.oracle == doctest::Approx(binned_product_entropy(c.f0, 2)));
}

TEST_CASE("moment run needs enough seeds")
{
    ExperimentConfig c = small_config();
    c.n_values = {10};
    c.moment_lags = {1, 2};
    CHECK_THROWS_AS(run_moments(c, evaluator()), DomainError);
    c.realizations = 32;
    MomentReport m = run_moments(c, evaluator());
    REQUIRE(m.scans.size() == 1);
    CHECK(m.seeds == 32);
    CHECK(m.scans[0].moments.size() == 2);
}

TEST_CASE("doubles print with full precision")
{
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0})
        CHECK(std::stod(format_double(v)) == v);
    CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("CSV rows carry provenance")
{
    auto dir = scratch("csv");
    {
        CsvWriter w(dir / "a.csv", {"t", "x"}, {100, 8, 42}, true);
        w.row({"0", "1.5"}, 3);
        CHECK_THROWS_AS(w.row({"0"}), DomainError);
    }
    auto lines = lines_of(dir / "a.csv");
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "t,x,N,R,rid,seed,build");
    CHECK(lines[1] == "0,1.5,100,8,3,42," + build_id());

    write_summary_csv(dir / "summary.csv", {{"check", 1.0, 2.0, true}}, {10, 2, 1});
    auto s = lines_of(dir / "summary.csv");
    REQUIRE(s.size() == 2);
    CHECK(s[0].rfind("check,value,threshold,pass", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("diagnostics CSV has one row per record")
{
    auto dir = scratch("diag");
    ExperimentConfig c = small_config();
    auto runs = run_realizations(c, 20, evaluator());
    REQUIRE(runs.size() == 3);
    write_diagnostics_csv(dir / "d.csv", runs[1].records, c.diagnostics, {20, 3, c.seed}, 1);
    auto lines = lines_of(dir / "d.csv");
    REQUIRE(lines.size() == runs[1].records.size() + 1);
    CHECK(lines[0].rfind("t,mode_", 0) == 0);
    CHECK(lines[0].find("H_N,energy,hnorm_s2,conc_r0.05") != std::string::npos);
    CHECK(lines[0].find("min_dist,N,R,rid,seed,build") != std::string::npos);
    for (const auto &l : lines) CHECK(columns(l) == columns(lines[0]));
    std::filesystem::remove_all(dir);
}
