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

#include "vortexmf/noise_field.hpp"

#include "noise_rows.hpp"
#include "vortexmf/compensated.hpp"
#include "vortexmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>

namespace vortexmf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

// Rows per block in the spectral path; bounds grid memory to block * 2 * n.
constexpr int rows_per_block = 16;
// Automatic backend switches to spectral above this many particle-mode products.
constexpr double direct_work_limit = 4e6;

cplx unit_phase(double cycles) { return std::polar(1.0, two_pi * std::remainder(cycles, 1.0)); }
} // namespace

std::string to_string(NoiseBackend b)
{
    switch (b) {
    case NoiseBackend::automatic: return "auto";
    case NoiseBackend::direct: return "direct";
    case NoiseBackend::spectral: return "spectral";
    }
    return "auto";
}

NoiseBackend noise_backend_from_string(const std::string &name)
{
    if (name == "auto") return NoiseBackend::automatic;
    if (name == "direct") return NoiseBackend::direct;
    if (name == "spectral") return NoiseBackend::spectral;
    throw ConfigError("noise.backend: expected auto, direct or spectral, got '" + name + "'");
}

NoiseField::NoiseField(NoiseSpec spec) : spec_(std::move(spec))
{
    if (!spec_.theta) throw DomainError("noise field: missing theta");
    nufft_ = std::make_unique<Nufft1D>(spec_.theta->cutoff());
}

NoiseField::~NoiseField() = default;

NoiseBackend NoiseField::resolve(NoiseBackend backend, std::size_t n) const
{
    if (backend != NoiseBackend::automatic) return backend;
    double work = double(n) * double(spec_.theta->mode_count());
    return work <= direct_work_limit ? NoiseBackend::direct : NoiseBackend::spectral;
}

std::vector<Vec2> NoiseField::displacements(const NoiseIncrement &inc, std::span<const TorusPoint> x,
                                            NoiseBackend backend) const
{
    inc.check_compatible(*spec_.theta);
    if (inc.is_zero() || spec_.nu == 0.0) return std::vector<Vec2>(x.size());
    return resolve(backend, x.size()) == NoiseBackend::direct ? direct(inc, x) : spectral(inc, x);
}

std::vector<Vec2> NoiseField::direct(const NoiseIncrement &inc, std::span<const TorusPoint> x) const
{
    const double eps = spec_.epsilon();
    const int cutoff = spec_.theta->cutoff();
    std::vector<detail::NoiseRow> rows(std::size_t(cutoff) + 1);
    {
        std::vector<double> wp, wm;
        for (int k1 = 0; k1 <= cutoff; ++k1) detail::noise_row(spec_, eps, inc, k1, rows[std::size_t(k1)], wp, wm);
    }
    std::vector<Vec2> u(x.size());
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double x1 = x[i].x1(), x2 = x[i].x2();
        const cplx step = std::polar(1.0, two_pi * x2);
        double u1 = 0.0, u2 = 0.0;
        for (const detail::NoiseRow &row : rows) {
            if (row.c.empty()) continue;
            cplx e = std::polar(1.0, two_pi * row.first * x2);
            cplx s0 = 0.0, s1 = 0.0;
            for (int k2 = row.first; k2 <= row.last; ++k2) {
                cplx term = row.c[std::size_t(k2 - row.first)] * e;
                s0 += term;
                s1 += double(k2) * term;
                e *= step;
            }
            cplx e1 = std::polar(1.0, two_pi * row.k1 * x1);
            u1 += (e1 * s1).real();
            u2 -= row.k1 * (e1 * s0).real();
        }
        u[i] = {u1, u2};
    }
    return u;
}

std::vector<Vec2> NoiseField::spectral(const NoiseIncrement &inc, std::span<const TorusPoint> x) const
{
    const double eps = spec_.epsilon();
    const int cutoff = spec_.theta->cutoff();
    const std::size_t n = x.size();

    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i].x2();
    const Nufft1D::Points pts = nufft_->prepare(y);
    // Visit particles in grid order so the gathers stream through memory. Each
    // particle's own arithmetic is unchanged by the visiting order.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pts.start[a] < pts.start[b]; });

    const int ng = nufft_->grid_size() + nufft_->width();
    const int width = nufft_->width();
    std::vector<FftBuffer> grid0, grid1;
    for (int b = 0; b < rows_per_block; ++b) {
        grid0.push_back(nufft_->make_grid());
        grid1.push_back(nufft_->make_grid());
    }
    // Both channels of a row interleaved as (re0, im0, re1, im1) per grid node, so
    // one pass over the kernel footprint serves both.
    std::vector<std::vector<double>> dual(rows_per_block, std::vector<double>(std::size_t(4 * ng)));
    std::vector<double> u1(n, 0.0), u2(n, 0.0);

    for (int r0 = 0; r0 <= cutoff; r0 += rows_per_block) {
        const int nb = std::min(rows_per_block, cutoff + 1 - r0);
#pragma omp parallel
        {
            detail::NoiseRow row;
            std::vector<double> wp, wm;
            std::vector<cplx> weighted;
#pragma omp for schedule(static)
            for (int b = 0; b < nb; ++b) {
                FftBuffer &g0 = grid0[std::size_t(b)];
                FftBuffer &g1 = grid1[std::size_t(b)];
                detail::noise_row(spec_, eps, inc, r0 + b, row, wp, wm);
                weighted.resize(row.c.size());
                for (int k2 = row.first; k2 <= row.last; ++k2)
                    weighted[std::size_t(k2 - row.first)] = double(k2) * row.c[std::size_t(k2 - row.first)];
                nufft_->coefficients_to_grid(row.c.data(), row.first, row.last, g0);
                nufft_->coefficients_to_grid(weighted.data(), row.first, row.last, g1);
                double *d = dual[std::size_t(b)].data();
                for (int l = 0; l < ng; ++l) {
                    d[4 * l] = g0[std::size_t(l)].real();
                    d[4 * l + 1] = g0[std::size_t(l)].imag();
                    d[4 * l + 2] = g1[std::size_t(l)].real();
                    d[4 * l + 3] = g1[std::size_t(l)].imag();
                }
            }
#pragma omp for schedule(static)
            for (std::size_t q = 0; q < n; ++q) {
                const std::size_t i = order[q];
                const double x1 = x[i].x1();
                cplx e1 = unit_phase(r0 * x1);
                const cplx step = std::polar(1.0, two_pi * x1);
                const double *w = pts.weights.data() + i * std::size_t(width);
                double a1 = u1[i], a2 = u2[i];
                for (int b = 0; b < nb; ++b) {
                    const double *g = dual[std::size_t(b)].data() + 4 * std::size_t(pts.start[i]);
                    double acc[4] = {0.0, 0.0, 0.0, 0.0};
                    for (int l = 0; l < width; ++l)
                        for (int c = 0; c < 4; ++c) acc[c] += w[l] * g[4 * l + c];
                    // Re(e1 * v) for v0 = acc[0] + i acc[1], v1 = acc[2] + i acc[3]
                    a1 += e1.real() * acc[2] - e1.imag() * acc[3];
                    a2 -= (r0 + b) * (e1.real() * acc[0] - e1.imag() * acc[1]);
                    e1 *= step;
                }
                u1[i] = a1;
                u2[i] = a2;
            }
        }
    }
    std::vector<Vec2> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = {u1[i], u2[i]};
    return u;
}

std::vector<double> quadratic_variation_rates(const NoiseSpec &spec, std::span<const TorusPoint> x,
                                              std::span<const Mode> test_modes)
{
    const ThetaSpec &th = *spec.theta;
    const int cutoff = th.cutoff();
    const double n = double(x.size());
    std::vector<double> rates(test_modes.size(), 0.0);
    if (x.empty() || spec.nu == 0.0 || test_modes.empty()) return rates;

    int kmax1 = 0, kmax2 = 0;
    for (Mode k : test_modes) {
        if (k.k1 == 0 && k.k2 == 0) throw DomainError("quadratic variation: test mode must be nonzero");
        kmax1 = std::max(kmax1, std::abs(k.k1));
        kmax2 = std::max(kmax2, std::abs(k.k2));
    }
    const int m2max = cutoff + kmax2;
    Nufft1D nufft(m2max);
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i].x2();
    const Nufft1D::Points pts = nufft.prepare(y);
    FftBuffer grid = nufft.make_grid();
    std::vector<cplx> strengths(x.size());

    // Rows P(m1, .) for m1 >= 0, computed on demand; P(-m) = conj P(m).
    std::map<int, std::vector<cplx>> cache;
    auto row = [&](int m1) -> const std::vector<cplx> & {
        auto it = cache.find(m1);
        if (it != cache.end()) return it->second;
        for (std::size_t i = 0; i < x.size(); ++i) strengths[i] = unit_phase(m1 * x[i].x1());
        nufft.spread(strengths, pts, grid);
        std::vector<cplx> r(std::size_t(2 * m2max + 1));
        nufft.grid_to_coefficients(grid, -m2max, m2max, r.data());
        return cache.emplace(m1, std::move(r)).first->second;
    };
    auto structure = [&](int m1, int m2) -> cplx {
        if (m1 >= 0) return row(m1)[std::size_t(m2 + m2max)];
        return std::conj(row(-m1)[std::size_t(-m2 + m2max)]);
    };

    const double eps2 = 4.0 * spec.nu / th.norm2();
    const double c = 16.0 * std::numbers::pi * std::numbers::pi;
    std::vector<CompensatedSum> sums(test_modes.size());
    for (int l1 = 0; l1 <= cutoff; ++l1) {
        const int h = th.row_half_width(l1);
        for (int l2 = (l1 == 0 ? 1 : -h); l2 <= h; ++l2) {
            double t = th.theta({l1, l2});
            if (t == 0.0) continue;
            double ll = double(l1) * l1 + double(l2) * l2;
            for (std::size_t q = 0; q < test_modes.size(); ++q) {
                Mode k = test_modes[q];
                double cross = double(l2) * k.k1 - double(l1) * k.k2; // l-perp . k
                if (cross == 0.0) continue;
                cplx pp = structure(l1 + k.k1, l2 + k.k2);
                cplx pm = structure(l1 - k.k1, l2 - k.k2);
                double s2 = in_upper(k) ? std::norm(pp - pm) / 4.0 : std::norm(pp + pm) / 4.0;
                sums[q].add(t * t * c * cross * cross / ll * s2);
            }
        }
        // Rows below l1 - kmax1 are no longer needed, except the small rows that
        // serve negative indices.
        for (auto it = cache.begin(); it != cache.end();) {
            if (it->first > kmax1 && it->first < l1 + 1 - kmax1) it = cache.erase(it);
            else ++it;
        }
    }
    for (std::size_t q = 0; q < test_modes.size(); ++q) rates[q] = eps2 * sums[q].value() / (n * n);
    return rates;
}

} // namespace vortexmf
