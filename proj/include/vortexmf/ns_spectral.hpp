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

#include "vortexmf/density.hpp"
#include "vortexmf/error.hpp"
#include "vortexmf/noise.hpp"
#include "vortexmf/torus.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace vortexmf {

/// CFL condition dt * max|u| * n <= 0.5 violated.
class CflError : public Error {
public:
    CflError(const std::string &what, double max_speed) : Error(what), max_speed_(max_speed) {}
    double max_speed() const { return max_speed_; }

private:
    double max_speed_;
};

/// Fourier coefficients of a real vorticity field, xi(x) = sum_k xi_hat(k) exp(2 pi i k.x),
/// stored for k2 >= 0 (the rest follows from conjugate symmetry).
class SpectralVorticity {
public:
    explicit SpectralVorticity(int n = 128);

    int n() const { return n_; }
    int columns() const { return n_ / 2 + 1; }
    double time = 0.0;

    /// xi_hat(k) for |k_i| < n/2; conjugate symmetry supplies k2 < 0.
    std::complex<double> coefficient(Mode k) const;
    /// Sets xi_hat(k) and its conjugate partner.
    void set_coefficient(Mode k, std::complex<double> v);

    std::complex<double> *data() { return c_.data(); }
    const std::complex<double> *data() const { return c_.data(); }
    std::size_t index(int k1, int k2) const
    {
        return std::size_t(k1 < 0 ? k1 + n_ : k1) * std::size_t(columns()) + std::size_t(k2);
    }
    /// Wavenumber of storage row r.
    int row_mode(int r) const { return r < n_ / 2 ? r : r - n_; }

private:
    int n_;
    std::vector<std::complex<double>> c_;
};

struct SolverConfig {
    int n = 128;
    double dt = 1e-4;
    double nu = 0.05;
    /// Only the 2/3 rule is provided.
    std::string dealias = "2/3";
    /// Integrating-factor RK4 on the nonlinear term.
    std::string integrator = "if-rk4";

    void validate() const;
    /// Largest retained |k_i| under the 2/3 rule.
    int dealias_limit() const { return n / 3; }
};

/// Velocity on the n x n grid x = (i/n, j/n), row-major in i.
struct VelocityGrid {
    int n = 0;
    std::vector<double> u1, u2;
    double max_speed() const;
};

/// Places f0's modes exactly. Throws DomainError for n < 32, n not a power of two, or
/// modes beyond the dealiased range.
SpectralVorticity init_field(const DensitySpec &f0, int n);

/// Periodic Gaussian of width w and unit mass centred at c, all retained modes.
SpectralVorticity gaussian_blob(int n, Vec2 centre, double width);

/// <xi, e_k>. Throws DomainError if k lies outside the dealiased range.
double weak_pairing(const SpectralVorticity &field, Mode k);

/// sum_k |xi_hat(k)|^2 (the squared L2 norm).
double l2_norm_squared(const SpectralVorticity &field);

/// Spectral velocity u_hat = K_hat xi_hat with K_hat(k) = -i k-perp / (2 pi |k|^2).
struct VelocitySpectrum {
    int n = 0;
    std::vector<std::complex<double>> u1, u2; // same layout as SpectralVorticity
};
VelocitySpectrum velocity_spectrum(const SpectralVorticity &field);

/// u = K * xi at an arbitrary point by direct summation over the stored modes.
Vec2 velocity_at(const SpectralVorticity &field, Vec2 x);

/// Pseudo-spectral solver for d_t xi + (K * xi) . grad xi = nu Laplacian xi.
/// Holds FFTW plans and work arrays; one instance per thread.
class SpectralSolver {
public:
    explicit SpectralSolver(SolverConfig config);
    ~SpectralSolver();
    SpectralSolver(const SpectralSolver &) = delete;
    SpectralSolver &operator=(const SpectralSolver &) = delete;

    const SolverConfig &config() const { return config_; }

    VelocityGrid velocity_from_vorticity(const SpectralVorticity &field);

    /// Dealiased -(u . grad xi) in spectral form, zero mean.
    void nonlinear(const SpectralVorticity &field, SpectralVorticity &out);

    /// One integrating-factor RK4 step. Throws CflError before stepping if violated.
    void step(SpectralVorticity &field);

private:
    void to_grid(const std::complex<double> *spec, double *grid);
    void dealias(SpectralVorticity &f) const;
    void enforce_symmetry(SpectralVorticity &f) const;

    SolverConfig config_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Single step with a temporary solver.
void ns_step(SpectralVorticity &field, const SolverConfig &config);

struct PdeRecord {
    std::size_t step = 0;
    double time = 0.0;
    std::vector<double> modes;
};

/// Runs the solver from f0 and records <xi, e_k> for the given modes at the given steps.
std::vector<PdeRecord> solve(const DensitySpec &f0, const SolverConfig &config,
                             const std::vector<std::size_t> &record_steps,
                             const std::vector<Mode> &modes);

} // namespace vortexmf
