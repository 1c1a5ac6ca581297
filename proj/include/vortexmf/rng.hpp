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

#include <array>
#include <cstdint>
#include <utility>

namespace vortexmf {

/// Philox4x32-10 counter-based generator: output is a pure function of (counter, key).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter ctr, PhiloxKey key);

/// Stream tags occupy the last counter word so different uses never share draws.
enum class StreamTag : std::uint32_t {
    noise = 0x4e4f4953u,
    initial_position = 0x504f5331u,
    initial_accept = 0x41434331u,
};

inline PhiloxKey key_from_seed(std::uint64_t seed)
{
    return {std::uint32_t(seed), std::uint32_t(seed >> 32)};
}

/// Two uniforms in (0, 1) with 53-bit resolution from one Philox block.
std::pair<double, double> uniform_pair(PhiloxCounter ctr, PhiloxKey key);

/// Two independent standard normals (Box-Muller on uniform_pair).
std::pair<double, double> normal_pair(PhiloxCounter ctr, PhiloxKey key);

/// Pairs per normal block. Blocks are aligned to multiples of this size.
inline constexpr std::uint32_t normal_block_pairs = 64;

/// Standard normals for pair indices [block * 64, block * 64 + 64): out[2p] and
/// out[2p + 1] come from counter (pair, c1, c2, tag). The block is always computed
/// as a whole, so a value never depends on which other values were requested.
void normal_block(PhiloxKey key, std::uint32_t block, std::uint32_t c1, std::uint32_t c2,
                  std::uint32_t tag, double *out);

} // namespace vortexmf
