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

#include "vortexmf/ns_spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <sstream>

namespace vortexmf {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * pi;
using cplx = std::complex<double>;

std::mutex &plan_mutex()
{
    static std::mutex m;
    return m;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }
} // namespace

SpectralVorticity::SpectralVorticity(int n) : n_(n)
{
    if (n < 32 || !power_of_two(n)) throw DomainError("spectral field: n must be a power of two >= 32");
    c_.assign(std::size_t(n) * std::size_t(columns()), 0.0);
}

cplx SpectralVorticity::coefficient(Mode k) const
{
    const int h = n_ / 2;
    if (k.k1 < -h || k.k1 >= h || k.k2 < -h || k.k2 >= h)
        throw DomainError("spectral field: mode outside the grid");
    if (k.k2 >= 0) return c_[index(k.k1, k.k2)];
    return std::conj(c_[index(-k.k1, -k.k2)]);
}

void SpectralVorticity::set_coefficient(Mode k, cplx v)
{
    const int h = n_ / 2;
    if (k.k1 <= -h || k.k1 >= h || k.k2 <= -h || k.k2 >= h)
        throw DomainError("spectral field: mode outside the grid");
    if (k.k1 == 0 && k.k2 == 0) {
        c_[0] = v.real();
        return;
    }
    if (k.k2 > 0) c_[index(k.k1, k.k2)] = v;
    else if (k.k2 < 0) c_[index(-k.k1, -k.k2)] = std::conj(v);
    else {
        c_[index(k.k1, 0)] = v;
        c_[index(-k.k1, 0)] = std::conj(v);
    }
}

void SolverConfig::validate() const
{
    if (n < 32 || !power_of_two(n)) throw ConfigError("pde.n: must be a power of two >= 32");
    if (!(dt > 0.0)) throw ConfigError("pde.dt: must be positive");
    if (!(nu >= 0.0)) throw ConfigError("pde.nu: must be >= 0");
    if (dealias != "2/3") throw ConfigError("pde.dealias: only the 2/3 rule is available");
    if (integrator != "if-rk4") throw ConfigError("pde.integrator: only if-rk4 is available");
}

double VelocityGrid::max_speed() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) m = std::max(m, std::hypot(u1[i], u2[i]));
    return m;
}

SpectralVorticity init_field(const DensitySpec &f0, int n)
{
    SpectralVorticity f(n);
    if (f0.max_mode() > n / 3)
        throw DomainError("init_field: density modes exceed the dealiased range for n = " + std::to_string(n));
    f.set_coefficient({0, 0}, 1.0);
    for (const DensityTerm &t : f0.terms()) {
        // Update the upper representative p; the partner -p follows by symmetry.
        Mode p = in_upper(t.k) ? t.k : Mode{-t.k.k1, -t.k.k2};
        cplx add = in_upper(t.k) ? cplx(t.amplitude / std::numbers::sqrt2, 0.0)
                                 : cplx(0.0, t.amplitude / std::numbers::sqrt2);
        f.set_coefficient(p, f.coefficient(p) + add);
    }
    return f;
}

SpectralVorticity gaussian_blob(int n, Vec2 centre, double width)
{
    SpectralVorticity f(n);
    const int lim = n / 3;
    for (int k1 = -lim; k1 <= lim; ++k1)
        for (int k2 = 0; k2 <= lim; ++k2) {
            double kk = double(k1) * k1 + double(k2) * k2;
            cplx v = std::exp(-2.0 * pi * pi * width * width * kk) *
                     std::polar(1.0, -two_pi * (k1 * centre.x1 + k2 * centre.x2));
            if (k2 > 0 || k1 >= 0) f.set_coefficient({k1, k2}, v);
        }
    return f;
}

double weak_pairing(const SpectralVorticity &field, Mode k)
{
    const int lim = field.n() / 3;
    if (std::abs(k.k1) > lim || std::abs(k.k2) > lim)
        throw DomainError("weak_pairing: mode outside the dealiased range");
    cplx c = field.coefficient(k);
    if (k.k1 == 0 && k.k2 == 0) return c.real();
    return in_upper(k) ? std::numbers::sqrt2 * c.real() : -std::numbers::sqrt2 * c.imag();
}

double l2_norm_squared(const SpectralVorticity &field)
{
    const int n = field.n(), cols = field.columns();
    double s = 0.0;
    for (int r = 0; r < n; ++r)
        for (int k2 = 0; k2 < cols; ++k2) {
            double w = (k2 == 0 || 2 * k2 == n) ? 1.0 : 2.0;
            s += w * std::norm(field.data()[std::size_t(r) * std::size_t(cols) + std::size_t(k2)]);
        }
    return s;
}

VelocitySpectrum velocity_spectrum(const SpectralVorticity &field)
{
    const int n = field.n(), cols = field.columns();
    VelocitySpectrum v;
    v.n = n;
    v.u1.assign(std::size_t(n) * std::size_t(cols), 0.0);
    v.u2 = v.u1;
    for (int r = 0; r < n; ++r) {
        int k1 = field.row_mode(r);
        for (int k2 = 0; k2 < cols; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            std::size_t idx = std::size_t(r) * std::size_t(cols) + std::size_t(k2);
            double kk = double(k1) * k1 + double(k2) * k2;
            cplx f = cplx(0.0, 1.0) * field.data()[idx] / (two_pi * kk);
            v.u1[idx] = -double(k2) * f;
            v.u2[idx] = double(k1) * f;
        }
    }
    return v;
}

Vec2 velocity_at(const SpectralVorticity &field, Vec2 x)
{
    VelocitySpectrum v = velocity_spectrum(field);
    const int n = field.n(), cols = field.columns();
    double u1 = 0.0, u2 = 0.0;
    for (int r = 0; r < n; ++r) {
        int k1 = field.row_mode(r);
        for (int k2 = 0; k2 < cols; ++k2) {
            std::size_t idx = std::size_t(r) * std::size_t(cols) + std::size_t(k2);
            if (v.u1[idx] == 0.0 && v.u2[idx] == 0.0) continue;
            double w = (k2 == 0 || 2 * k2 == n) ? 1.0 : 2.0;
            cplx e = std::polar(1.0, two_pi * (k1 * x.x1 + k2 * x.x2));
            u1 += w * (v.u1[idx] * e).real();
            u2 += w * (v.u2[idx] * e).real();
        }
    }
    return {u1, u2};
}

struct SpectralSolver::Impl {
    int n = 0;
    int cols = 0;
    fftw_plan c2r = nullptr;
    fftw_plan r2c = nullptr;
    fftw_complex *cbuf = nullptr;
    double *g_u1 = nullptr, *g_u2 = nullptr, *g_d1 = nullptr, *g_d2 = nullptr;
    std::vector<double> half_factor; // exp(L dt / 2)
    std::vector<double> kx, ky;      // wavenumbers per storage index
    std::vector<char> keep;          // dealias mask
};

SpectralSolver::SpectralSolver(SolverConfig config) : config_(std::move(config)), impl_(std::make_unique<Impl>())
{
    config_.validate();
    Impl &m = *impl_;
    m.n = config_.n;
    m.cols = m.n / 2 + 1;
    const std::size_t nspec = std::size_t(m.n) * std::size_t(m.cols);
    const std::size_t nreal = std::size_t(m.n) * std::size_t(m.n);
    m.cbuf = fftw_alloc_complex(nspec);
    m.g_u1 = fftw_alloc_real(nreal);
    m.g_u2 = fftw_alloc_real(nreal);
    m.g_d1 = fftw_alloc_real(nreal);
    m.g_d2 = fftw_alloc_real(nreal);
    {
        std::lock_guard lock(plan_mutex());
        m.c2r = fftw_plan_dft_c2r_2d(m.n, m.n, m.cbuf, m.g_u1, FFTW_ESTIMATE);
        m.r2c = fftw_plan_dft_r2c_2d(m.n, m.n, m.g_u1, m.cbuf, FFTW_ESTIMATE);
    }
    m.half_factor.resize(nspec);
    m.kx.resize(nspec);
    m.ky.resize(nspec);
    m.keep.resize(nspec);
    const int lim = config_.dealias_limit();
    for (int r = 0; r < m.n; ++r) {
        int k1 = r < m.n / 2 ? r : r - m.n;
        for (int k2 = 0; k2 < m.cols; ++k2) {
            std::size_t idx = std::size_t(r) * std::size_t(m.cols) + std::size_t(k2);
            double kk = double(k1) * k1 + double(k2) * k2;
            m.half_factor[idx] = std::exp(-4.0 * pi * pi * config_.nu * kk * 0.5 * config_.dt);
            m.kx[idx] = k1;
            m.ky[idx] = k2;
            m.keep[idx] = std::abs(k1) <= lim && k2 <= lim;
        }
    }
}

SpectralSolver::~SpectralSolver()
{
    Impl &m = *impl_;
    {
        std::lock_guard lock(plan_mutex());
        fftw_destroy_plan(m.c2r);
        fftw_destroy_plan(m.r2c);
    }
    fftw_free(m.cbuf);
    fftw_free(m.g_u1);
    fftw_free(m.g_u2);
    fftw_free(m.g_d1);
    fftw_free(m.g_d2);
}

void SpectralSolver::to_grid(const cplx *spec, double *grid)
{
    Impl &m = *impl_;
    const std::size_t nspec = std::size_t(m.n) * std::size_t(m.cols);
    // c2r overwrites its input, so transform a copy.
    std::copy(spec, spec + nspec, reinterpret_cast<cplx *>(m.cbuf));
    fftw_execute_dft_c2r(m.c2r, m.cbuf, grid);
}

void SpectralSolver::dealias(SpectralVorticity &f) const
{
    const Impl &m = *impl_;
    for (std::size_t i = 0; i < m.keep.size(); ++i)
        if (!m.keep[i]) f.data()[i] = 0.0;
}

void SpectralSolver::enforce_symmetry(SpectralVorticity &f) const
{
    const int n = f.n();
    cplx *c = f.data();
    c[0] = c[0].real();
    for (int k1 = 1; k1 < n / 2; ++k1) {
        cplx a = c[f.index(k1, 0)], b = c[f.index(-k1, 0)];
        cplx s = 0.5 * (a + std::conj(b));
        c[f.index(k1, 0)] = s;
        c[f.index(-k1, 0)] = std::conj(s);
    }
}

VelocityGrid SpectralSolver::velocity_from_vorticity(const SpectralVorticity &field)
{
    Impl &m = *impl_;
    if (field.n() != m.n) throw DomainError("solver: grid size mismatch");
    VelocitySpectrum v = velocity_spectrum(field);
    VelocityGrid g;
    g.n = m.n;
    const std::size_t nreal = std::size_t(m.n) * std::size_t(m.n);
    to_grid(v.u1.data(), m.g_u1);
    to_grid(v.u2.data(), m.g_u2);
    g.u1.assign(m.g_u1, m.g_u1 + nreal);
    g.u2.assign(m.g_u2, m.g_u2 + nreal);
    return g;
}

void SpectralSolver::nonlinear(const SpectralVorticity &field, SpectralVorticity &out)
{
    Impl &m = *impl_;
    const std::size_t nspec = m.keep.size();
    const std::size_t nreal = std::size_t(m.n) * std::size_t(m.n);
    VelocitySpectrum v = velocity_spectrum(field);
    std::vector<cplx> d1(nspec), d2(nspec);
    for (std::size_t i = 0; i < nspec; ++i) {
        cplx c = m.keep[i] ? field.data()[i] : 0.0;
        d1[i] = cplx(0.0, two_pi * m.kx[i]) * c;
        d2[i] = cplx(0.0, two_pi * m.ky[i]) * c;
        if (!m.keep[i]) v.u1[i] = v.u2[i] = 0.0;
    }
    to_grid(v.u1.data(), m.g_u1);
    to_grid(v.u2.data(), m.g_u2);
    to_grid(d1.data(), m.g_d1);
    to_grid(d2.data(), m.g_d2);
    for (std::size_t i = 0; i < nreal; ++i) m.g_d1[i] = m.g_u1[i] * m.g_d1[i] + m.g_u2[i] * m.g_d2[i];
    fftw_execute_dft_r2c(m.r2c, m.g_d1, m.cbuf);
    const double scale = -1.0 / double(nreal);
    const cplx *src = reinterpret_cast<const cplx *>(m.cbuf);
    for (std::size_t i = 0; i < nspec; ++i) out.data()[i] = m.keep[i] ? scale * src[i] : 0.0;
    out.data()[0] = 0.0;
    enforce_symmetry(out);
}

void SpectralSolver::step(SpectralVorticity &field)
{
    Impl &m = *impl_;
    const double dt = config_.dt;
    const double umax = velocity_from_vorticity(field).max_speed();
    if (dt * umax * m.n > 0.5) {
        std::ostringstream msg;
        msg << "CFL violated: dt * max|u| * n = " << dt * umax * m.n << " > 0.5 (max|u| = " << umax << ")";
        throw CflError(msg.str(), umax);
    }
    const std::size_t nspec = m.keep.size();
    const double mean = field.data()[0].real();
    dealias(field);
    SpectralVorticity k1(m.n), k2(m.n), k3(m.n), k4(m.n), tmp(m.n);
    const auto &e = m.half_factor;
    cplx *x = field.data();

    nonlinear(field, k1);
    for (std::size_t i = 0; i < nspec; ++i) tmp.data()[i] = e[i] * (x[i] + 0.5 * dt * k1.data()[i]);
    nonlinear(tmp, k2);
    for (std::size_t i = 0; i < nspec; ++i) tmp.data()[i] = e[i] * x[i] + 0.5 * dt * k2.data()[i];
    nonlinear(tmp, k3);
    for (std::size_t i = 0; i < nspec; ++i) tmp.data()[i] = e[i] * e[i] * x[i] + dt * e[i] * k3.data()[i];
    nonlinear(tmp, k4);
    for (std::size_t i = 0; i < nspec; ++i) {
        double e2 = e[i] * e[i];
        x[i] = e2 * x[i] + dt / 6.0 * (e2 * k1.data()[i] + 2.0 * e[i] * (k2.data()[i] + k3.data()[i]) + k4.data()[i]);
    }
    field.data()[0] = mean;
    enforce_symmetry(field);
    field.time += dt;
}

void ns_step(SpectralVorticity &field, const SolverConfig &config)
{
    SpectralSolver s(config);
    s.step(field);
}

std::vector<PdeRecord> solve(const DensitySpec &f0, const SolverConfig &config,
                             const std::vector<std::size_t> &record_steps, const std::vector<Mode> &modes)
{
    SpectralSolver solver(config);
    SpectralVorticity field = init_field(f0, config.n);
    std::vector<std::size_t> steps = record_steps;
    std::sort(steps.begin(), steps.end());
    steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
    std::vector<PdeRecord> out;
    auto record = [&](std::size_t s) {
        PdeRecord r;
        r.step = s;
        r.time = double(s) * config.dt;
        for (Mode k : modes) r.modes.push_back(weak_pairing(field, k));
        out.push_back(std::move(r));
    };
    std::size_t next = 0;
    for (std::size_t s = 0; next < steps.size(); ++s) {
        if (steps[next] == s) {
            record(s);
            ++next;
            if (next == steps.size()) break;
        }
        solver.step(field);
        field.time = double(s + 1) * config.dt;
    }
    return out;
}

} // namespace vortexmf
