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

#include "vortexmf/torus.hpp"

#include <span>
#include <vector>

namespace vortexmf {

/// Torus Green function G(x) = -(1/4pi^2) sum_{k != 0} cos(2 pi k.x)/|k|^2,
/// evaluated by Ewald splitting with the Fourier part truncated at |k| <= cutoff.
/// Throws SingularityError at x = 0 and DomainError if cutoff < 8.
double green(const TorusPoint &x, int cutoff);

/// K = grad-perp G = (d2 G, -d1 G) by the same Ewald splitting. Throws at x = 0.
Vec2 biot_savart_direct(Vec2 x, int cutoff);

/// Smooth remainder r(x) = G(x) - (1/2pi) log|x| for 0 < |x|, direct evaluation.
double green_remainder_direct(Vec2 x, int cutoff);

/// grad-perp r, direct evaluation; well defined at x = 0.
Vec2 remainder_perp_gradient_direct(Vec2 x, int cutoff);

/// Tabulated evaluator of K and G. Immutable after construction.
///
/// K is split into x-perp/(2 pi |x|^2) plus the grad-perp of the smooth remainder,
/// which is tabulated on [0, 1/2]^2 and interpolated bicubically. Values are
/// computed on (|x1|, |x2|) and signed afterwards, so K(-x) = -K(x) bitwise.
class KernelEvaluator {
public:
    static constexpr double default_delta_min = 1e-6;
    static constexpr double accuracy_target = 1e-6;

    /// Builds the tables and checks them against the direct evaluation on a fixed
    /// 100-point set. Throws DomainError on bad arguments and Error carrying the
    /// measured residual if the check fails.
    KernelEvaluator(int mode_cutoff = 128, int table_resolution = 512,
                    double delta_min = default_delta_min);

    int mode_cutoff() const { return mode_cutoff_; }
    int table_resolution() const { return resolution_; }
    double singular_clamp() const { return delta_min_; }
    /// Sup-error measured against the direct evaluation at construction.
    double build_residual() const { return build_residual_; }
    /// Hamiltonian constant: c0 >= max G and c0 - G(x) >= (1/2pi) log(1/|x|) on |x| <= 1/2.
    double c0() const { return c0_; }

    /// K(x) for a displacement in [-1/2, 1/2]^2. K(0) = 0; clamped below delta_min.
    Vec2 biot_savart(Vec2 x) const;

    /// G(x) with log|x| clamped at delta_min. Total function.
    double green(Vec2 x) const;

    /// Fixed validation points (distance >= 0.01 from the origin).
    static std::vector<Vec2> validation_points();

private:
    struct Stencil {
        int i0, j0;
        double wx[4], wy[4];
    };
    Stencil stencil(double a1, double a2) const;
    double interp(const std::vector<double> &table, const Stencil &s) const;

    int mode_cutoff_;
    int resolution_;
    int stride_;
    double h_;
    double delta_min_;
    double build_residual_ = 0.0;
    double c0_ = 0.0;
    // Nodes i*h for i in [-1, resolution+1], row-major in (i1, i2).
    std::vector<double> r_;
    std::vector<double> k1_;
    std::vector<double> k2_;
};

inline Vec2 biot_savart(const KernelEvaluator &e, Vec2 x) { return e.biot_savart(x); }

/// Drift velocities (1/N) sum_{j != i} K(x_i - x_j). Parallel over i; the inner sum
/// runs over j in index order so the result does not depend on the thread count.
/// If min_distance is non-null it receives the minimum pair distance (0 for N = 1).
std::vector<Vec2> pairwise_drift(const KernelEvaluator &e, std::span<const TorusPoint> x,
                                 double *min_distance = nullptr);

namespace reference {
/// Serial pairwise drift, same summation order as the parallel version.
std::vector<Vec2> pairwise_drift(const KernelEvaluator &e, std::span<const TorusPoint> x);
} // namespace reference

} // namespace vortexmf
