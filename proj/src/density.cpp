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

#include "vortexmf/density.hpp"

#include "vortexmf/error.hpp"
#include "vortexmf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace vortexmf {

namespace {
// Grid used to confirm the declared minimum.
constexpr int min_check_grid = 256;
constexpr double min_check_slack = 1e-9;
} // namespace

DensitySpec::DensitySpec(std::vector<DensityTerm> terms, double declared_min)
    : terms_(std::move(terms)), declared_min_(declared_min)
{
    if (!(declared_min >= 0.0)) throw DomainError("density: declared minimum must be >= 0");
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        const DensityTerm &t = terms_[i];
        if (t.k.k1 == 0 && t.k.k2 == 0) throw DomainError("density: the constant term is fixed to 1");
        if (!std::isfinite(t.amplitude)) throw DomainError("density: non-finite amplitude");
        for (std::size_t j = 0; j < i; ++j)
            if (terms_[j].k == t.k) throw DomainError("density: repeated mode");
    }
    double lowest = INFINITY;
    for (int i = 0; i < min_check_grid; ++i)
        for (int j = 0; j < min_check_grid; ++j)
            lowest = std::min(lowest, (*this)({(i + 0.5) / min_check_grid - 0.5,
                                               (j + 0.5) / min_check_grid - 0.5}));
    if (lowest < declared_min_ - min_check_slack)
        throw DomainError("density: series reaches " + std::to_string(lowest) +
                          ", below the declared minimum " + std::to_string(declared_min_));
}

DensitySpec DensitySpec::default_experiment()
{
    return DensitySpec({{{1, 0}, 0.3}, {{0, -1}, -0.3}}, 0.15);
}

double DensitySpec::operator()(Vec2 x) const
{
    double v = 1.0;
    for (const DensityTerm &t : terms_) v += t.amplitude * basis_eval(t.k, x);
    return v;
}

double DensitySpec::envelope() const
{
    double s = 1.0;
    for (const DensityTerm &t : terms_) s += std::numbers::sqrt2 * std::abs(t.amplitude);
    return s;
}

double DensitySpec::pairing(Mode k) const
{
    if (k.k1 == 0 && k.k2 == 0) return 1.0;
    for (const DensityTerm &t : terms_)
        if (t.k == k) return t.amplitude;
    return 0.0;
}

int DensitySpec::max_mode() const
{
    int m = 0;
    for (const DensityTerm &t : terms_) m = std::max({m, std::abs(t.k.k1), std::abs(t.k.k2)});
    return m;
}

VortexEnsemble sample_initial(const DensitySpec &f0, std::size_t n, std::uint64_t seed,
                              std::uint32_t realization)
{
    if (n < 1) throw DomainError("sample_initial: N must be >= 1");
    VortexEnsemble e;
    e.realization = realization;
    e.positions.resize(n);
    const PhiloxKey key = key_from_seed(seed);
    const double envelope = f0.envelope();
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::uint32_t attempt = 0;; ++attempt) {
            auto [a, b] = uniform_pair({std::uint32_t(i), attempt, realization,
                                        std::uint32_t(StreamTag::initial_position)}, key);
            Vec2 p{a - 0.5, b - 0.5};
            auto [u, unused] = uniform_pair({std::uint32_t(i), attempt, realization,
                                             std::uint32_t(StreamTag::initial_accept)}, key);
            (void)unused;
            if (u * envelope <= f0(p)) {
                e.positions[i] = TorusPoint::wrap_unchecked(p);
                break;
            }
        }
    }
    return e;
}

} // namespace vortexmf
