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

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace vortexmf {

/// FFTW-aligned complex buffer.
class FftBuffer {
public:
    FftBuffer() = default;
    explicit FftBuffer(std::size_t n);
    FftBuffer(FftBuffer &&o) noexcept;
    FftBuffer &operator=(FftBuffer &&o) noexcept;
    FftBuffer(const FftBuffer &) = delete;
    FftBuffer &operator=(const FftBuffer &) = delete;
    ~FftBuffer();

    std::complex<double> *data() { return data_; }
    const std::complex<double> *data() const { return data_; }
    std::size_t size() const { return size_; }
    std::complex<double> &operator[](std::size_t i) { return data_[i]; }

private:
    std::complex<double> *data_ = nullptr;
    std::size_t size_ = 0;
};

/// One-dimensional non-uniform FFT for modes j in [-M, M] and points y in [-1/2, 1/2),
/// using an exponential-of-semicircle spreading kernel on an oversampled grid.
///
///   type 2:  f(y_i) = sum_j a_j exp(2 pi i j y_i)
///   type 1:  P_j    = sum_i s_i exp(2 pi i j y_i)
///
/// The grid is padded by the kernel width so spreading and gathering never wrap.
class Nufft1D {
public:
    explicit Nufft1D(int max_mode, int width = 12, double oversampling = 2.0);
    ~Nufft1D();
    Nufft1D(const Nufft1D &) = delete;
    Nufft1D &operator=(const Nufft1D &) = delete;

    int max_mode() const { return max_mode_; }
    int grid_size() const { return n_; }
    int width() const { return width_; }

    /// Kernel footprint of every point; reusable for any number of transforms.
    struct Points {
        std::vector<int> start;
        std::vector<double> weights; // width per point
        std::size_t size() const { return start.size(); }
    };
    Points prepare(std::span<const double> y) const;

    /// Padded grid buffer (grid_size + width entries).
    FftBuffer make_grid() const;

    /// Type 2, step 1: deconvolve a_j (j = first..last) and transform onto grid.
    void coefficients_to_grid(const std::complex<double> *a, int first, int last,
                              FftBuffer &grid) const;
    /// Type 2, step 2: interpolate the grid at point i.
    std::complex<double> gather(const FftBuffer &grid, const Points &p, std::size_t i) const
    {
        const std::complex<double> *g = grid.data() + p.start[i];
        const double *w = p.weights.data() + i * std::size_t(width_);
        double re = 0.0, im = 0.0;
        for (int l = 0; l < width_; ++l) {
            re += w[l] * g[l].real();
            im += w[l] * g[l].imag();
        }
        return {re, im};
    }

    /// Type 1, step 1: spread strengths onto a zeroed grid.
    void spread(std::span<const std::complex<double>> s, const Points &p, FftBuffer &grid) const;
    /// Type 1, step 2: transform (in place) and deconvolve into out[j - first].
    void grid_to_coefficients(FftBuffer &grid, int first, int last, std::complex<double> *out) const;

    /// Convenience wrappers.
    std::vector<std::complex<double>> type2(std::span<const std::complex<double>> a, int first,
                                            std::span<const double> y) const;
    std::vector<std::complex<double>> type1(std::span<const std::complex<double>> s,
                                            std::span<const double> y, int first, int last) const;

private:
    void execute(FftBuffer &grid) const;
    double correction(int j) const { return inv_phi_hat_[std::size_t(j < 0 ? -j : j)]; }

    int max_mode_;
    int width_;
    int n_;
    double beta_;
    double half_width_;
    std::vector<double> inv_phi_hat_;
    void *plan_ = nullptr;
};

/// Smallest 2^a 3^b 5^c that is even and >= n.
int next_smooth_size(int n);

} // namespace vortexmf
