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

#include "vortexmf/rng.hpp"

#include <cmath>
#include <numbers>

namespace vortexmf {

namespace {

constexpr std::uint32_t M0 = 0xD2511F53u;
constexpr std::uint32_t M1 = 0xCD9E8D57u;
constexpr std::uint32_t W0 = 0x9E3779B9u;
constexpr std::uint32_t W1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
{
    std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

// Uniform in (0, 1): 53 bits, offset by half an ulp so 0 is never produced.
inline double to_unit(std::uint32_t hi, std::uint32_t lo)
{
    std::uint64_t bits = ((std::uint64_t(hi) << 32) | lo) >> 11;
    return (double(bits) + 0.5) * 0x1.0p-53;
}

} // namespace

PhiloxCounter philox4x32(PhiloxCounter c, PhiloxKey k)
{
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(M0, c[0], hi0, lo0);
        mulhilo(M1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += W0;
        k[1] += W1;
    }
    return c;
}

std::pair<double, double> uniform_pair(PhiloxCounter ctr, PhiloxKey key)
{
    PhiloxCounter r = philox4x32(ctr, key);
    return {to_unit(r[0], r[1]), to_unit(r[2], r[3])};
}

std::pair<double, double> normal_pair(PhiloxCounter ctr, PhiloxKey key)
{
    auto [u1, u2] = uniform_pair(ctr, key);
    double rad = std::sqrt(-2.0 * std::log(u1));
    double ang = 2.0 * std::numbers::pi * u2;
    return {rad * std::cos(ang), rad * std::sin(ang)};
}

namespace detail {
// Vectorized Box-Muller, compiled separately with vector math enabled.
void box_muller_block(const double *u1, const double *u2, double *z0, double *z1);
} // namespace detail

void normal_block(PhiloxKey key, std::uint32_t block, std::uint32_t c1, std::uint32_t c2,
                  std::uint32_t tag, double *out)
{
    alignas(64) double u1[normal_block_pairs], u2[normal_block_pairs];
    alignas(64) double z0[normal_block_pairs], z1[normal_block_pairs];
    const std::uint32_t base = block * normal_block_pairs;
    for (std::uint32_t p = 0; p < normal_block_pairs; ++p) {
        PhiloxCounter r = philox4x32({base + p, c1, c2, tag}, key);
        u1[p] = to_unit(r[0], r[1]);
        u2[p] = to_unit(r[2], r[3]);
    }
    detail::box_muller_block(u1, u2, z0, z1);
    for (std::uint32_t p = 0; p < normal_block_pairs; ++p) {
        out[2 * p] = z0[p];
        out[2 * p + 1] = z1[p];
    }
}

} // namespace vortexmf
