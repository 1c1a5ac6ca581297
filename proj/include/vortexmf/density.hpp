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
#include "vortexmf/torus.hpp"

#include <cstdint>
#include <vector>

namespace vortexmf {

/// Term a * e_k of a density.
struct DensityTerm {
    Mode k;
    double amplitude = 0.0;
};

/// f0 = 1 + sum_j a_j e_{k_j}: a finite trigonometric series with unit mass.
class DensitySpec {
public:
    DensitySpec() = default;
    /// Throws DomainError on k = 0, repeated modes, non-finite amplitudes, a negative
    /// declared minimum, or if the series dips below the declared minimum.
    DensitySpec(std::vector<DensityTerm> terms, double declared_min);

    static DensitySpec uniform() { return DensitySpec({}, 1.0); }
    /// 1 + 0.3 e_(1,0) - 0.3 e_(0,-1) = 1 + 0.3 sqrt2 cos(2pi x1) + 0.3 sqrt2 sin(2pi x2).
    static DensitySpec default_experiment();

    const std::vector<DensityTerm> &terms() const { return terms_; }
    double declared_min() const { return declared_min_; }
    double operator()(Vec2 x) const;
    /// Upper bound 1 + sqrt2 sum |a_j| used as the rejection envelope.
    double envelope() const;
    /// <f0, e_k>: the amplitude of k, 1 for k = 0.
    double pairing(Mode k) const;
    /// Largest |k_i| among the terms.
    int max_mode() const;

private:
    std::vector<DensityTerm> terms_;
    double declared_min_ = 1.0;
};

/// Positions of N vortices in one realization.
struct VortexEnsemble {
    std::vector<TorusPoint> positions;
    std::uint32_t realization = 0;
    double time = 0.0;

    std::size_t size() const { return positions.size(); }
};

/// N independent draws from f0 by rejection against the uniform proposal. Particle i
/// uses its own counter stream, so the sample does not depend on thread count.
VortexEnsemble sample_initial(const DensitySpec &f0, std::size_t n, std::uint64_t seed,
                              std::uint32_t realization);

} // namespace vortexmf
