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

#include "vortexmf/spectral_rows.hpp"

#include "vortexmf/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace vortexmf {

namespace {
// FFTW's planner is not thread safe.
std::mutex &planner_mutex()
{
    static std::mutex m;
    return m;
}
} // namespace

FftBuffer::FftBuffer(std::size_t n)
    : data_(reinterpret_cast<std::complex<double> *>(fftw_alloc_complex(n))), size_(n)
{
    if (!data_) throw Error("fft buffer: allocation failed");
    for (std::size_t i = 0; i < n; ++i) data_[i] = 0.0;
}

FftBuffer::FftBuffer(FftBuffer &&o) noexcept : data_(o.data_), size_(o.size_)
{
    o.data_ = nullptr;
    o.size_ = 0;
}

FftBuffer &FftBuffer::operator=(FftBuffer &&o) noexcept
{
    if (this != &o) {
        if (data_) fftw_free(data_);
        data_ = o.data_;
        size_ = o.size_;
        o.data_ = nullptr;
        o.size_ = 0;
    }
    return *this;
}

FftBuffer::~FftBuffer()
{
    if (data_) fftw_free(data_);
}

int next_smooth_size(int n)
{
    for (int m = std::max(n, 2);; ++m) {
        if (m % 2) continue;
        int r = m;
        for (int p : {2, 3, 5})
            while (r % p == 0) r /= p;
        if (r == 1) return m;
    }
}

Nufft1D::Nufft1D(int max_mode, int width, double oversampling)
    : max_mode_(max_mode), width_(width)
{
    if (max_mode < 0) throw DomainError("nufft: max_mode must be >= 0");
    if (width < 4 || width > 16) throw DomainError("nufft: width must lie in [4, 16]");
    if (!(oversampling >= 2.0)) throw DomainError("nufft: oversampling must be >= 2");
    n_ = next_smooth_size(std::max(int(std::ceil(oversampling * (2 * max_mode + 1))), 2 * width));
    beta_ = 2.30 * width;
    half_width_ = 0.5 * width;

    // phi_hat(j) = alpha * int_{-1}^{1} phi(z) cos(2 pi j alpha z / n) dz, four panels.
    using quad = boost::math::quadrature::gauss<double, 30>;
    inv_phi_hat_.resize(std::size_t(max_mode) + 1);
    for (int j = 0; j <= max_mode; ++j) {
        double omega = 2.0 * std::numbers::pi * j * half_width_ / n_;
        auto f = [&](double z) {
            return std::exp(beta_ * (std::sqrt(std::max(0.0, 1.0 - z * z)) - 1.0)) *
                   std::cos(omega * z);
        };
        double integral = 0.0;
        for (int panel = 0; panel < 4; ++panel)
            integral += quad::integrate(f, 0.25 * panel, 0.25 * (panel + 1));
        inv_phi_hat_[std::size_t(j)] = 1.0 / (2.0 * half_width_ * integral);
    }

    FftBuffer probe{static_cast<std::size_t>(n_)};
    std::lock_guard lock(planner_mutex());
    auto *buf = reinterpret_cast<fftw_complex *>(probe.data());
    plan_ = fftw_plan_dft_1d(n_, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_) throw Error("nufft: FFTW planning failed");
}

Nufft1D::~Nufft1D()
{
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(plan_));
}

FftBuffer Nufft1D::make_grid() const { return FftBuffer(std::size_t(n_ + width_)); }

void Nufft1D::execute(FftBuffer &grid) const
{
    auto *buf = reinterpret_cast<fftw_complex *>(grid.data());
    fftw_execute_dft(static_cast<fftw_plan>(plan_), buf, buf);
}

Nufft1D::Points Nufft1D::prepare(std::span<const double> y) const
{
    Points p;
    p.start.resize(y.size());
    p.weights.resize(y.size() * std::size_t(width_));
    for (std::size_t i = 0; i < y.size(); ++i) {
        double t = y[i] * n_;
        double l0 = std::ceil(t - half_width_);
        long s = long(l0) % n_;
        if (s < 0) s += n_;
        p.start[i] = int(s);
        double *w = p.weights.data() + i * std::size_t(width_);
        for (int l = 0; l < width_; ++l) {
            double z = (t - (l0 + l)) / half_width_;
            double q = 1.0 - z * z;
            w[l] = q > 0.0 ? std::exp(beta_ * (std::sqrt(q) - 1.0)) : 0.0;
        }
    }
    return p;
}

void Nufft1D::coefficients_to_grid(const std::complex<double> *a, int first, int last,
                                   FftBuffer &grid) const
{
    if (first < -max_mode_ || last > max_mode_) throw DomainError("nufft: mode range exceeds max_mode");
    std::complex<double> *g = grid.data();
    for (int l = 0; l < n_ + width_; ++l) g[l] = 0.0;
    for (int j = first; j <= last; ++j) {
        int idx = j < 0 ? j + n_ : j;
        g[idx] = a[j - first] * correction(j);
    }
    execute(grid);
    for (int l = 0; l < width_; ++l) g[n_ + l] = g[l];
}

void Nufft1D::spread(std::span<const std::complex<double>> s, const Points &p, FftBuffer &grid) const
{
    std::complex<double> *g = grid.data();
    for (int l = 0; l < n_ + width_; ++l) g[l] = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        std::complex<double> *gi = g + p.start[i];
        const double *w = p.weights.data() + i * std::size_t(width_);
        for (int l = 0; l < width_; ++l) gi[l] += w[l] * s[i];
    }
    for (int l = 0; l < width_; ++l) g[l] += g[n_ + l];
}

void Nufft1D::grid_to_coefficients(FftBuffer &grid, int first, int last, std::complex<double> *out) const
{
    if (first < -max_mode_ || last > max_mode_) throw DomainError("nufft: mode range exceeds max_mode");
    execute(grid);
    const std::complex<double> *g = grid.data();
    for (int j = first; j <= last; ++j) {
        int idx = j < 0 ? j + n_ : j;
        out[j - first] = g[idx] * correction(j);
    }
}

std::vector<std::complex<double>> Nufft1D::type2(std::span<const std::complex<double>> a, int first,
                                                 std::span<const double> y) const
{
    FftBuffer grid = make_grid();
    coefficients_to_grid(a.data(), first, first + int(a.size()) - 1, grid);
    Points p = prepare(y);
    std::vector<std::complex<double>> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = gather(grid, p, i);
    return out;
}

std::vector<std::complex<double>> Nufft1D::type1(std::span<const std::complex<double>> s,
                                                 std::span<const double> y, int first, int last) const
{
    FftBuffer grid = make_grid();
    Points p = prepare(y);
    spread(s, p, grid);
    std::vector<std::complex<double>> out(std::size_t(last - first + 1));
    grid_to_coefficients(grid, first, last, out.data());
    return out;
}

} // namespace vortexmf
