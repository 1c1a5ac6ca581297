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

#include "vortexmf/density.hpp"
#include "vortexmf/kernel.hpp"
#include "vortexmf/noise.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace vortexmf {

class NoiseField;

/// <S, e_k> = (1/N) sum_i e_k(x_i); 1 for k = 0.
double empirical_mode(std::span<const TorusPoint> x, Mode k);

/// Nonzero modes with |k| <= radius, lexicographic.
std::vector<Mode> modes_in_disk(int radius);

/// sqrt( sum_{|k| <= M} <S, e_k>^2 / (1 + |k|^2)^s ), the k = 0 term included.
/// Throws DomainError unless s > 1 and M >= 1.
double sobolev_neg_norm(std::span<const TorusPoint> x, double s, int window);

/// H_N = (1/N^2) sum_{i != j} [c0 - G(x_i - x_j)]; 0 for N < 2.
double hamiltonian(std::span<const TorusPoint> x, const KernelEvaluator &e, double c0);
inline double hamiltonian(std::span<const TorusPoint> x, const KernelEvaluator &e)
{
    return hamiltonian(x, e, e.c0());
}

/// (1/N^2) sum_{i != j} -G(x_i - x_j); 0 for N < 2.
double interaction_energy(std::span<const TorusPoint> x, const KernelEvaluator &e);

/// Max over a grid x grid lattice of centres of the fraction of particles within
/// torus distance r. Underestimates the supremum by at most the mass of an annulus
/// one cell wide. grid = 0 selects ceil(4/r). Throws unless 0 < r < 1/4, grid >= 2/r.
double concentration_stat(std::span<const TorusPoint> x, double r, int grid = 0);

/// Right-hand side of the concentration bound 1/sqrt(N) + (2 pi H_N / log(1/2r))^(1/2).
double concentration_bound(std::size_t n, double hamiltonian_value, double r);

/// Minimum torus distance over pairs; 0 for N < 2.
double min_pair_distance(std::span<const TorusPoint> x);

/// Running martingale M_t = eps sum_k theta_k int <S_s, sigma_k . grad e_m> dW^k_s for
/// each test mode m, with its running sup and quadratic variation.
struct MartingaleState {
    std::vector<Mode> modes;
    std::vector<double> value;
    std::vector<double> sup_abs;
    std::vector<double> qv;

    explicit MartingaleState(std::vector<Mode> test_modes = {{1, 0}, {0, 1}, {1, 1}});
};

/// Adds (1/N) sum_i grad e_m(x_i) . d_i for precomputed noise displacements d_i, and
/// qv_rate[m] * dt to the quadratic variation when qv_rates is non-empty.
void martingale_accumulate(MartingaleState &state, std::span<const TorusPoint> x,
                           std::span<const Vec2> noise_displacement, std::span<const double> qv_rates,
                           double dt);

/// Full form: evaluates the noise at the particles. Throws DomainError if the
/// increment was not drawn for the field's spectrum.
void martingale_accumulate(MartingaleState &state, std::span<const TorusPoint> x,
                           const NoiseField &field, const NoiseIncrement &inc, bool track_qv);

/// 4-D histogram of ordered pairs (x_i, x_j), i != j, with b bins per axis.
class PairHistogram {
public:
    explicit PairHistogram(int bins = 16);

    int bins() const { return bins_; }
    std::uint64_t total() const { return total_; }
    const std::vector<std::uint64_t> &counts() const { return counts_; }

    /// Adds all N(N-1) ordered pairs of one ensemble.
    void add(std::span<const TorusPoint> x);
    /// Associative merge. Throws DomainError on a bin mismatch.
    void merge(const PairHistogram &other);

private:
    int bins_;
    std::vector<std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

/// Plug-in estimate (1/2) sum p log(p / vol) with vol = b^-4. Positive bias of order
/// bins^4 / samples. Throws DomainError on an empty histogram.
double entropy2_estimate(const PairHistogram &h);

/// Plug-in entropy of the exactly binned product density f0 (x) f0.
double binned_product_entropy(const DensitySpec &f0, int bins);

struct MomentScan {
    std::vector<int> lags;          // in steps
    std::vector<double> moments;    // E (X_{t+lag} - X_t)^4, averaged over t and seeds
    std::vector<double> std_errors; // across seeds
    double slope = 0.0;             // least-squares slope of log moment vs log lag
};

/// series[seed][step] of a scalar observable. Throws DomainError with fewer than
/// 32 seeds, ragged series, or a lag outside the horizon.
MomentScan increment_moment_scan(const std::vector<std::vector<double>> &series,
                                 const std::vector<int> &lags);

/// Settings shared by simulate() and the experiments.
struct DiagnosticsConfig {
    int mode_radius = 3;
    double sobolev_s = 2.0;
    int sobolev_window = 16;
    double concentration_r = 0.05;
    std::vector<Mode> martingale_modes{{1, 0}, {0, 1}, {1, 1}};
    bool track_qv = true;
    bool hamiltonian = true;
    bool concentration = true;
};

struct DiagnosticsRecord {
    std::size_t step = 0;
    double time = 0.0;
    std::vector<double> modes; // aligned with modes_in_disk(mode_radius)
    double hamiltonian = 0.0;
    double energy = 0.0;
    double hnorm = 0.0;
    double concentration = 0.0;
    std::vector<double> martingale;
    std::vector<double> martingale_sup;
    std::vector<double> qv;
    double min_distance = 0.0;
};

/// Column label for a mode: "1_0", "-1_2".
std::string mode_label(Mode k);

} // namespace vortexmf
