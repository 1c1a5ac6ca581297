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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace vortexmf;

namespace {

std::string with_experiment(const std::string &sections, const std::string &experiment_extra = "")
{
    return "{" + sections + (sections.empty() ? "" : ",") + R"("experiment": {"kind": "converge", "seed": 3)" +
           experiment_extra + "}}";
}

std::filesystem::path scratch(const std::string &name)
{
    auto p = std::filesystem::temp_directory_path() / ("vortexmf_unit_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

} // namespace

TEST_CASE("minimal config takes the defaults")
{
    ExperimentConfig c = parse_config(R"({"experiment": {"kind": "simulate", "seed": 7}})");
    CHECK(c.kind == ExperimentKind::simulate);
    CHECK(c.seed == 7);
    CHECK(c.nu == 0.05);
    CHECK(c.dt == 1e-3);
    CHECK(c.t_final == 0.2);
    CHECK(c.n_steps() == 200);
    CHECK(c.n_values == std::vector<std::size_t>{250, 1000, 4000});
    CHECK(c.realizations == 16);
    CHECK(c.theta.cutoff_follows_n);
    CHECK(c.f0.pairing({1, 0}) == 0.3);
    CHECK(c.pde.n == 128);
    CHECK(c.pde.nu == c.nu);

    auto sched = c.schedule();
    REQUIRE(sched.size() == 11);
    CHECK(sched.front() == 0);
    CHECK(sched.back() == 200);
    CHECK(sched[1] == 20);
}

TEST_CASE("config echo is written and reparses to the same config")
{
    auto dir = scratch("echo");
    ExperimentConfig c = parse_config(with_experiment(R"("noise": {"nu": 0.1, "cutoff": 12})",
                                                      R"(, "out": ")" + dir.string() + R"(", "N": [10, 20])"));
    write_config_echo(c);
    REQUIRE(std::filesystem::exists(dir / "config_echo.json"));
    ExperimentConfig back = load_config(dir / "config_echo.json");
    CHECK(dump_config(back) == dump_config(c));
    CHECK(back.nu == 0.1);
    CHECK(back.pde.nu == 0.1);
    CHECK_FALSE(back.theta.cutoff_follows_n);
    CHECK(back.theta.cutoff == 12);
    std::filesystem::remove_all(dir);
}

TEST_CASE("cutoff rule N builds one spectrum per N")
{
    ExperimentConfig c = parse_config(with_experiment(R"("noise": {"cutoff": "N"})", R"(, "N": [8, 32])"));
    CHECK(c.theta.cutoff_for(8) == 8);
    CHECK(c.theta.cutoff_for(32) == 32);
    CHECK(c.noise_for(32).theta->cutoff() == 32);
    CHECK(c.noise_for(8).theta->theta({1, 1}) == doctest::Approx(1.0 / std::sqrt(2.0)));

    ExperimentConfig fixed = parse_config(with_experiment(R"("noise": {"cutoff": 5, "profile": "shell"})"));
    CHECK(fixed.theta.cutoff_for(4000) == 5);
    CHECK(fixed.noise_for(4000).theta->theta({1, 0}) == 0.0);
}

TEST_CASE("density sections")
{
    ExperimentConfig u = parse_config(with_experiment(R"("density": {"preset": "uniform"})"));
    CHECK(u.f0.terms().empty());
    ExperimentConfig t = parse_config(
        with_experiment(R"("density": {"terms": [{"k": [1, 0], "amplitude": 0.3}, {"k": [0, 2], "amplitude": -0.1}]})"));
    CHECK(t.f0.pairing({1, 0}) == 0.3);
    CHECK(t.f0.pairing({0, 2}) == -0.1);
    CHECK_THROWS_AS(parse_config(with_experiment(R"("density": {"preset": "gaussian"})")), ConfigError);
    CHECK_THROWS_AS(parse_config(with_experiment(R"("density": {"terms": [{"k": [1, 0], "amplitude": 0.9}]})")),
                    ConfigError);
}

TEST_CASE("invalid configs name the field")
{
    auto message = [](const std::string &text) {
        try {
            parse_config(text);
        } catch (const ConfigError &e) {
            return std::string(e.what());
        }
        return std::string();
    };
    CHECK(message(with_experiment(R"("noise": {"nu": -0.1})")).find("noise.nu") != std::string::npos);
    CHECK(message(with_experiment("", R"(, "N": [100, 100])")).find("experiment.N") != std::string::npos);
    CHECK(message(with_experiment("", R"(, "N": [1000, 250])")).find("experiment.N") != std::string::npos);
    CHECK(message(with_experiment(R"("noise": {"colour": "red"})")).find("noise.colour") != std::string::npos);
    CHECK(message(R"({"experiment": {"seed": 1}})").find("experiment.kind") != std::string::npos);
    CHECK(message(R"({"experiment": {"kind": "converge"}})").find("experiment.seed") != std::string::npos);
    CHECK(message(R"({"noise": {}})").find("experiment") != std::string::npos);
    CHECK(message(with_experiment(R"("integrator": {"dt": 0})")).find("integrator.dt") != std::string::npos);
    CHECK(message(with_experiment(R"("integrator": {"dt": 0.003, "T": 0.01})")).find("integrator.T") !=
          std::string::npos);
    CHECK(message(with_experiment(R"("integrator": {"scheme": "heun"})")).find("integrator.scheme") !=
          std::string::npos);
    CHECK(message(with_experiment("", R"(, "kind": "dance")")).find("experiment.kind") != std::string::npos);
    CHECK(message(with_experiment(R"("noise": {"cutoff": "M"})")).find("noise.cutoff") != std::string::npos);
    CHECK(message(with_experiment(R"("noise": {"nu": "fast"})")).find("noise.nu") != std::string::npos);
    CHECK(message("{not json").find("JSON") != std::string::npos);
    CHECK(message(with_experiment("", R"(, "diagnostics": {"concentration_r": 0.3})"))
              .find("concentration_r") != std::string::npos);
}

TEST_CASE("experiment kinds round trip")
{
    for (ExperimentKind k : {ExperimentKind::simulate, ExperimentKind::solve, ExperimentKind::converge,
                             ExperimentKind::martingale, ExperimentKind::hamiltonian, ExperimentKind::entropy,
                             ExperimentKind::moments, ExperimentKind::validate_kernel, ExperimentKind::validate_noise,
                             ExperimentKind::validate_ns})
        CHECK(experiment_kind_from_string(to_string(k)) == k);
}

TEST_CASE("load_config reports missing files")
{
    CHECK_THROWS_AS(load_config("/nonexistent/vortexmf.json"), ConfigError);
}
