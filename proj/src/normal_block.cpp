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

// Box-Muller over a fixed-size block. This file is compiled with -ffast-math so the
// loops below map onto the vector math library; the block size is a multiple of
// every vector width, so no scalar remainder path is ever taken.

#include "vortexmf/rng.hpp"

#include <cmath>

namespace vortexmf::detail {

void box_muller_block(const double *__restrict u1, const double *__restrict u2,
                      double *__restrict z0, double *__restrict z1)
{
    constexpr int n = int(normal_block_pairs);
    constexpr double two_pi = 6.283185307179586;
    alignas(64) double rad[n];
#pragma omp simd
    for (int i = 0; i < n; ++i) rad[i] = std::sqrt(-2.0 * std::log(u1[i]));
#pragma omp simd
    for (int i = 0; i < n; ++i) z0[i] = rad[i] * std::cos(two_pi * u2[i]);
#pragma omp simd
    for (int i = 0; i < n; ++i) z1[i] = rad[i] * std::sin(two_pi * u2[i]);
}

} // namespace vortexmf::detail
