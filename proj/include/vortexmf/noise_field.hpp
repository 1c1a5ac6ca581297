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

#include "vortexmf/noise.hpp"
#include "vortexmf/spectral_rows.hpp"

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace vortexmf {

enum class NoiseBackend { automatic, direct, spectral };

std::string to_string(NoiseBackend b);
NoiseBackend noise_backend_from_string(const std::string &name);

/// Evaluates the shared noise field at many particles.
///
/// The direct backend sums each row of modes per particle. The spectral backend
/// evaluates each row k1 as a one-dimensional trigonometric polynomial in x2 by a
/// type-2 NUFFT and combines rows with exp(2 pi i k1 x1). Both parallelize over
/// particles with a fixed per-particle row order, so results are bit-identical for
/// any thread count.
class NoiseField {
public:
    explicit NoiseField(NoiseSpec spec);
    ~NoiseField();

    const NoiseSpec &spec() const { return spec_; }

    /// epsilon sum_k theta_k sigma_k(x_i) dW^k for every particle.
    std::vector<Vec2> displacements(const NoiseIncrement &inc, std::span<const TorusPoint> x,
                                    NoiseBackend backend = NoiseBackend::automatic) const;

    /// Backend used by `automatic` for n particles.
    NoiseBackend resolve(NoiseBackend backend, std::size_t n) const;

private:
    std::vector<Vec2> direct(const NoiseIncrement &inc, std::span<const TorusPoint> x) const;
    std::vector<Vec2> spectral(const NoiseIncrement &inc, std::span<const TorusPoint> x) const;

    NoiseSpec spec_;
    std::unique_ptr<Nufft1D> nufft_;
};

/// Quadratic-variation rates of the martingale of <S, e_k>, per unit time:
///   epsilon^2 sum_l theta_l^2 <S, sigma_l . grad e_k>^2
/// computed from the structure factor P(m) = sum_i exp(2 pi i m.x_i).
std::vector<double> quadratic_variation_rates(const NoiseSpec &spec, std::span<const TorusPoint> x,
                                              std::span<const Mode> test_modes);

} // namespace vortexmf
