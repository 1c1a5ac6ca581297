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

// Independent reference values for tests. Nothing here shares code with the library.

#include <cmath>
#include <numbers>
#include <utility>

namespace oracle {

struct GreenValue {
    double g;  // G(x)
    double d1; // dG/dx1
    double d2; // dG/dx2
};

// G(x) = -(1/4pi^2) sum_{k != 0} cos(2 pi k.x)/|k|^2 with the sum over the axis of
// larger |x_i| done in closed form; the remaining sum converges geometrically.
inline GreenValue green_series(double x1, double x2, int cutoff = 2048)
{
    constexpr double pi = std::numbers::pi;
    bool swapped = std::abs(x2) > std::abs(x1);
    if (swapped) std::swap(x1, x2);
    const double u = std::abs(x1);
    const double sgn = x1 < 0.0 ? -1.0 : 1.0;
    double sum_g = 0.0, sum_d2 = 0.0, sum_d1 = 0.0;
    for (int k = 1; k <= cutoff; ++k) {
        double a = std::exp(-2.0 * pi * k * u);
        double b = std::exp(-2.0 * pi * k * (1.0 - u));
        double den = -std::expm1(-2.0 * pi * k);
        double hh = (a + b) / den;
        double dd = (a - b) / den;
        double c = std::cos(2.0 * pi * k * x2);
        double s = std::sin(2.0 * pi * k * x2);
        sum_g += c * (pi / k) * hh;
        sum_d2 += s * hh;
        sum_d1 += c * dd;
        if (a < 1e-300 && b < 1e-300) break;
    }
    const double b2 = u * u - u + 1.0 / 6.0;
    GreenValue v;
    v.g = -(2.0 * pi * pi * b2 + 2.0 * sum_g) / (4.0 * pi * pi);
    v.d2 = sum_d2;
    v.d1 = sgn * ((1.0 - 2.0 * u) / 2.0 + sum_d1);
    if (swapped) std::swap(v.d1, v.d2);
    return v;
}

// K = (dG/dx2, -dG/dx1).
inline std::pair<double, double> kernel_series(double x1, double x2, int cutoff = 2048)
{
    GreenValue v = green_series(x1, x2, cutoff);
    return {v.d2, -v.d1};
}

} // namespace oracle
