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

#include "../oracle.hpp"

#include "vortexmf/density.hpp"
#include "vortexmf/error.hpp"
#include "vortexmf/ns_spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using namespace vortexmf;

namespace {

constexpr double pi = std::numbers::pi;

DensitySpec mixed()
{
    return DensitySpec({{{1, 0}, 0.2}, {{0, -1}, -0.2}, {{1, 1}, 0.15}}, 0.0);
}

double max_abs(const SpectralVorticity &f, bool skip_mean)
{
    double m = 0.0;
    for (int r = 0; r < f.n(); ++r)
        for (int c = 0; c < f.columns(); ++c) {
            if (skip_mean && r == 0 && c == 0) continue;
            m = std::max(m, std::abs(f.data()[f.index(f.row_mode(r), c)]));
        }
    return m;
}

} // namespace

TEST_CASE("init_field places the density modes")
{
    SpectralVorticity u = init_field(DensitySpec::uniform(), 32);
    CHECK(u.coefficient({0, 0}) == std::complex<double>(1.0, 0.0));
    CHECK(max_abs(u, true) == 0.0);

    SpectralVorticity f = init_field(DensitySpec({{{1, 0}, 0.3}}, 0.0), 32);
    CHECK(std::abs(f.coefficient({1, 0}) - 0.3 / std::sqrt(2.0)) <= 1e-16);
    CHECK(std::abs(f.coefficient({-1, 0}) - 0.3 / std::sqrt(2.0)) <= 1e-16);
    f.set_coefficient({1, 0}, 0.0);
    CHECK(max_abs(f, true) == 0.0);

    for (DensitySpec d : {DensitySpec::default_experiment(), mixed()}) {
        SpectralVorticity g = init_field(d, 64);
        for (int a = -4; a <= 4; ++a)
            for (int b = -4; b <= 4; ++b)
                CHECK(weak_pairing(g, {a, b}) == doctest::Approx(d.pairing({a, b})).epsilon(1e-15));
    }
    CHECK(weak_pairing(u, {2, 3}) == 0.0);
}

TEST_CASE("init_field and weak_pairing reject bad input")
{
    CHECK_THROWS_AS(init_field(DensitySpec::uniform(), 16), DomainError);
    CHECK_THROWS_AS(init_field(DensitySpec::uniform(), 48), DomainError);
    CHECK_THROWS_AS(init_field(DensitySpec({{{11, 0}, 0.1}}, 0.0), 32), DomainError);
    CHECK_THROWS_AS(weak_pairing(init_field(DensitySpec::uniform(), 32), {11, 0}), DomainError);
}

TEST_CASE("conjugate partners are kept in step")
{
    SpectralVorticity f(32);
    f.set_coefficient({3, -2}, {0.1, 0.2});
    CHECK(f.coefficient({-3, 2}) == std::conj(f.coefficient({3, -2})));
    f.set_coefficient({0, 0}, {1.0, 0.0});
    CHECK(f.coefficient({0, 0}).real() == 1.0);
}

TEST_CASE("solver config validation")
{
    CHECK_NOTHROW(SolverConfig{}.validate());
    SolverConfig c;
    c.n = 100;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.dt = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.nu = -1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.dealias = "3/2";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.integrator = "euler";
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK(SolverConfig{}.dealias_limit() == 42);
}

TEST_CASE("velocity of a constant field vanishes")
{
    SolverConfig c;
    c.n = 32;
    SpectralSolver s(c);
    VelocityGrid v = s.velocity_from_vorticity(init_field(DensitySpec::uniform(), 32));
    CHECK(v.max_speed() == 0.0);
}

TEST_CASE("spectral velocity is divergence free and matches point evaluation")
{
    SpectralVorticity f = gaussian_blob(64, {0.1, -0.2}, 0.05);
    VelocitySpectrum u = velocity_spectrum(f);
    for (int r = 0; r < f.n(); ++r)
        for (int c = 0; c < f.columns(); ++c) {
            std::size_t i = f.index(f.row_mode(r), c);
            double k1 = f.row_mode(r), k2 = c;
            double size = std::hypot(k1, k2) * std::hypot(std::abs(u.u1[i]), std::abs(u.u2[i]));
            CHECK(std::abs(k1 * u.u1[i] + k2 * u.u2[i]) <= 1e-15 * size);
        }

    SolverConfig cfg;
    cfg.n = 64;
    SpectralSolver s(cfg);
    VelocityGrid g = s.velocity_from_vorticity(f);
    double scale = g.max_speed();
    for (int i : {0, 7, 33, 63})
        for (int j : {0, 12, 40}) {
            Vec2 p = velocity_at(f, {i / 64.0, j / 64.0});
            std::size_t k = std::size_t(i) * 64 + std::size_t(j);
            CHECK(std::abs(p.x1 - g.u1[k]) <= 1e-12 * scale);
            CHECK(std::abs(p.x2 - g.u2[k]) <= 1e-12 * scale);
        }
}

TEST_CASE("blob velocity follows the point-vortex kernel away from the centre")
{
    SpectralVorticity f = gaussian_blob(256, {0.0, 0.0}, 0.01);
    CHECK(f.coefficient({0, 0}).real() == doctest::Approx(1.0).epsilon(1e-14));
    for (Vec2 p : {Vec2{0.2, 0.0}, Vec2{0.0, -0.3}, Vec2{0.25, 0.25}, Vec2{-0.4, 0.1}}) {
        Vec2 u = velocity_at(f, p);
        auto [k1, k2] = oracle::kernel_series(p.x1, p.x2);
        double ref = std::hypot(k1, k2);
        CHECK(std::hypot(u.x1 - k1, u.x2 - k2) <= 0.01 * ref);
    }
}

TEST_CASE("a single mode has no nonlinear term")
{
    SolverConfig c;
    c.n = 32;
    SpectralSolver s(c);
    SpectralVorticity f = init_field(DensitySpec({{{2, 1}, 0.4}}, 0.0), 32), out(32);
    s.nonlinear(f, out);
    CHECK(max_abs(out, false) <= 1e-15);
}

TEST_CASE("Laplacian eigenfunction decays exactly")
{
    CHECK(std::exp(-0.04 * pi * pi) == doctest::Approx(0.673825).epsilon(1e-6));
    SolverConfig c;
    c.n = 32;
    c.nu = 0.01;
    c.dt = 1e-3;
    SpectralVorticity f = init_field(DensitySpec({{{1, 0}, 0.3}}, 0.0), 32);
    SpectralSolver s(c);
    for (int k = 0; k < 1000; ++k) s.step(f);
    CHECK(f.time == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(weak_pairing(f, {1, 0}) == doctest::Approx(0.3 * std::exp(-0.04 * pi * pi)).epsilon(1e-10));
}

TEST_CASE("steps keep the mean and conjugate symmetry")
{
    SolverConfig c;
    c.n = 64;
    c.nu = 0.02;
    c.dt = 1e-3;
    SpectralVorticity f = init_field(mixed(), 64);
    SpectralSolver s(c);
    for (int k = 0; k < 20; ++k) {
        s.step(f);
        CHECK(f.coefficient({0, 0}) == std::complex<double>(1.0, 0.0));
        for (int a = -20; a <= 20; ++a) CHECK(f.coefficient({a, 0}) == std::conj(f.coefficient({-a, 0})));
    }
    // The nonlinearity has moved energy into new modes.
    CHECK(std::abs(weak_pairing(f, {2, 1})) > 1e-8);
}

TEST_CASE("inviscid steps conserve the L2 norm")
{
    SolverConfig c;
    c.n = 64;
    c.nu = 0.0;
    c.dt = 1e-4;
    SpectralVorticity f = init_field(mixed(), 64);
    double e0 = l2_norm_squared(f);
    SpectralSolver s(c);
    for (int k = 0; k < 100; ++k) s.step(f);
    CHECK(std::abs(l2_norm_squared(f) - e0) <= 1e-8 * e0);
}

TEST_CASE("CFL violation is reported before stepping")
{
    SolverConfig c;
    c.n = 64;
    c.dt = 0.1;
    SpectralVorticity f = gaussian_blob(64, {0.0, 0.0}, 0.05);
    SpectralVorticity before = f;
    SpectralSolver s(c);
    try {
        s.step(f);
        FAIL("expected a CFL error");
    } catch (const CflError &e) {
        CHECK(e.max_speed() > 0.0);
    }
    CHECK(f.time == before.time);
    CHECK(f.coefficient({1, 1}) == before.coefficient({1, 1}));
}

TEST_CASE("solve records the schedule and is deterministic")
{
    SolverConfig c;
    c.n = 32;
    c.nu = 0.05;
    c.dt = 1e-3;
    std::vector<Mode> modes{{1, 0}, {0, 1}, {1, 1}};
    auto a = solve(mixed(), c, {0, 10, 50}, modes);
    auto b = solve(mixed(), c, {0, 10, 50}, modes);
    REQUIRE(a.size() == 3);
    CHECK(a[2].step == 50);
    CHECK(a[2].time == doctest::Approx(0.05));
    CHECK(a[0].modes[0] == doctest::Approx(0.2));
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].modes == b[i].modes);

    SpectralVorticity f = init_field(mixed(), 32);
    for (int k = 0; k < 10; ++k) ns_step(f, c);
    CHECK(weak_pairing(f, {1, 1}) == a[1].modes[2]);
}
