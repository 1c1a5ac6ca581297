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

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace vortexmf;

TEST_CASE("Philox4x32-10 known-answer vectors")
{
    CHECK(philox4x32({0, 0, 0, 0}, {0, 0}) == PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("uniforms lie strictly inside (0, 1)")
{
    const PhiloxKey key = key_from_seed(42);
    double lo = 1.0, hi = 0.0;
    for (std::uint32_t i = 0; i < 20000; ++i) {
        auto [a, b] = uniform_pair({i, 1, 2, 3}, key);
        lo = std::min({lo, a, b});
        hi = std::max({hi, a, b});
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
}

TEST_CASE("normal blocks: moments and independence from the query pattern")
{
    const PhiloxKey key = key_from_seed(7);
    std::vector<double> all;
    for (std::uint32_t b = 0; b < 400; ++b) {
        double out[2 * normal_block_pairs];
        normal_block(key, b, 5, 9, 77, out);
        all.insert(all.end(), out, out + 2 * normal_block_pairs);
    }
    const double n = double(all.size());
    double mean = std::accumulate(all.begin(), all.end(), 0.0) / n;
    double var = 0.0, m4 = 0.0;
    for (double v : all) {
        var += (v - mean) * (v - mean) / n;
        m4 += std::pow(v - mean, 4) / n;
    }
    CHECK(std::abs(mean) < 4.0 / std::sqrt(n));
    CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / n));

    // A block computed alone equals the same block computed among others.
    double again[2 * normal_block_pairs];
    normal_block(key, 123, 5, 9, 77, again);
    for (std::uint32_t i = 0; i < 2 * normal_block_pairs; ++i) CHECK(again[i] == all[123 * 2 * normal_block_pairs + i]);

    // Different counter words give different streams.
    double other[2 * normal_block_pairs];
    normal_block(key, 123, 6, 9, 77, other);
    CHECK(other[0] != again[0]);
}

TEST_CASE("vectorized block agrees with scalar Box-Muller")
{
    const PhiloxKey key = key_from_seed(99);
    double out[2 * normal_block_pairs];
    normal_block(key, 3, 1, 2, 4, out);
    for (std::uint32_t p = 0; p < normal_block_pairs; ++p) {
        auto [a, b] = normal_pair({3 * normal_block_pairs + p, 1, 2, 4}, key);
        CHECK(std::abs(out[2 * p] - a) <= 1e-12);
        CHECK(std::abs(out[2 * p + 1] - b) <= 1e-12);
    }
}
