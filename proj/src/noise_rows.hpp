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

// Internal: per-row complex coefficients of the noise field.

#include "vortexmf/noise.hpp"

#include <complex>
#include <vector>

namespace vortexmf::detail {

/// Row k1 >= 0 of the upper half-lattice: coefficients c_k, k2 = first..last, with
/// noise velocity u(x) = sum_{k in Z^2_+} k-perp Re[c_k exp(2 pi i k.x)].
struct NoiseRow {
    int k1 = 0;
    int first = 0;
    int last = -1;
    std::vector<std::complex<double>> c;
};

/// Fills row k1 from the increment. dw_plus/dw_minus are scratch buffers.
void noise_row(const NoiseSpec &spec, double epsilon, const NoiseIncrement &inc, int k1,
               NoiseRow &row, std::vector<double> &dw_plus, std::vector<double> &dw_minus);

} // namespace vortexmf::detail
