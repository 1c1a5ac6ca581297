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

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace vortexmf {

/// Lattice vector k in Z^2.
struct Mode {
    int k1 = 0;
    int k2 = 0;
    friend bool operator==(Mode, Mode) = default;
};

/// Upper half-lattice Z^2_+ = {k1 > 0} u {k1 = 0, k2 > 0}.
inline bool in_upper(Mode k) { return k.k1 > 0 || (k.k1 == 0 && k.k2 > 0); }

/// Fourier basis e_k: sqrt2 cos(2pi k.x) on Z^2_+, sqrt2 sin(2pi k.x) on Z^2_-, e_0 = 1.
double basis_eval(Mode k, Vec2 x);

/// 2x2 real matrix.
struct Mat2 {
    double a11 = 0.0, a12 = 0.0, a21 = 0.0, a22 = 0.0;
};

/// Spectral norm of a 2x2 matrix.
double operator_norm(const Mat2 &m);

/// Shape of the noise coefficients theta_k on the disk |k| <= cutoff.
struct ThetaProfile {
    enum class Kind { inverse, constant, shell, custom };
    Kind kind = Kind::inverse;
    /// Amplitude for constant and shell profiles.
    double value = 1.0;
    /// Non-radial test fixtures only; called as custom(k1, k2).
    std::function<double(int, int)> custom;

    static ThetaProfile inverse() { return {}; }
    static ThetaProfile constant(double v = 1.0) { return {Kind::constant, v, {}}; }
    /// Nonzero only on the outermost shell |k| = cutoff.
    static ThetaProfile shell(double v = 1.0) { return {Kind::shell, v, {}}; }
    static ThetaProfile from_function(std::function<double(int, int)> f)
    {
        return {Kind::custom, 1.0, std::move(f)};
    }
};

std::string to_string(ThetaProfile::Kind kind);
ThetaProfile::Kind profile_kind_from_string(const std::string &name);

/// Noise coefficients on the disk |k| <= cutoff, k != 0.
///
/// Modes are enumerated lexicographically (k1, then k2); the enumeration fixes
/// every summation order and the keying of the noise stream.
class ThetaSpec {
public:
    /// Throws DomainError if cutoff < 1 or every coefficient vanishes.
    ThetaSpec(int cutoff, ThetaProfile profile);

    int cutoff() const { return cutoff_; }
    const ThetaProfile &profile() const { return profile_; }
    std::size_t mode_count() const { return offsets_.back(); }
    double theta(Mode k) const;
    /// Sum of theta_k^2 over the disk.
    double norm2() const { return norm2_; }
    /// True if theta_k depends on |k| only.
    bool is_radial() const { return radial_; }

    /// Largest |k2| present in row k1.
    int row_half_width(int k1) const;
    /// Index of the first mode in row k1.
    std::size_t row_offset(int k1) const { return offsets_[std::size_t(k1 + cutoff_)]; }
    /// Position of k in the enumeration. Throws DomainError if k is not a mode.
    std::size_t mode_index(Mode k) const;
    Mode mode_at(std::size_t index) const;

    template <class F> void for_each_mode(F &&f) const
    {
        for (int k1 = -cutoff_; k1 <= cutoff_; ++k1) {
            int h = row_half_width(k1);
            for (int k2 = -h; k2 <= h; ++k2)
                if (k1 || k2) f(Mode{k1, k2});
        }
    }

private:
    int cutoff_;
    ThetaProfile profile_;
    std::vector<int> half_width_;
    std::vector<std::size_t> offsets_;
    double norm2_ = 0.0;
    bool radial_ = true;
};

ThetaSpec make_theta(int cutoff, ThetaProfile profile = ThetaProfile::inverse());

/// Noise coefficients together with the intensity nu. epsilon is derived on demand.
struct NoiseSpec {
    std::shared_ptr<const ThetaSpec> theta;
    double nu = 0.0;

    /// epsilon = 2 sqrt(nu) / ||theta||.
    double epsilon() const;
};

NoiseSpec make_noise_spec(std::shared_ptr<const ThetaSpec> theta, double nu);

/// sigma_k(x) = sqrt2 (k-perp/|k|) cos(2pi k.x) for k in Z^2_+, sine for Z^2_-.
Vec2 sigma_eval(Mode k, Vec2 x);

/// Q(x) = sum_k theta_k^2 (k-perp (x) k-perp / |k|^2) cos(2pi k.x), compensated sums.
Mat2 covariance(const ThetaSpec &theta, Vec2 x);

/// Max-norm of Q(0) - (1/2)||theta||^2 I.
double verify_isotropy(const ThetaSpec &theta);

struct DecayRow {
    int cutoff;
    double norm; // |epsilon^2 Q(x)|
};

/// |epsilon^2 Q(x)| for each spectrum. Throws DomainError at x = 0.
std::vector<DecayRow> verify_decay_condition(const std::vector<ThetaSpec> &thetas, Vec2 x,
                                             double nu);

/// Brownian increments dW^k over one step, one per mode, shared by all particles.
///
/// Stream increments are generated lazily from a counter-based generator keyed by
/// (seed, realization, step, mode), so any subset of modes can be read in any order.
class NoiseIncrement {
public:
    static NoiseIncrement stream(const ThetaSpec &theta, double dt, std::uint64_t seed,
                                 std::uint32_t realization, std::uint32_t step);
    /// All increments zero.
    static NoiseIncrement zero(const ThetaSpec &theta, double dt);
    /// Explicit values in enumeration order (test fixtures). Throws on size mismatch.
    static NoiseIncrement from_values(const ThetaSpec &theta, double dt,
                                      std::vector<double> values);

    double dt() const { return dt_; }
    std::uint32_t step() const { return step_; }
    int cutoff() const { return cutoff_; }
    std::size_t mode_count() const { return mode_count_; }
    bool is_zero() const { return kind_ == Kind::zero || dt_ == 0.0; }

    /// dW for the mode at this enumeration index.
    double value(std::size_t index) const;
    /// Writes dW for indices [begin, end) into out.
    void fill(std::size_t begin, std::size_t end, double *out) const;

    /// Throws DomainError if the increment was not drawn for this spectrum's mode set.
    void check_compatible(const ThetaSpec &theta) const;

private:
    enum class Kind { stream, zero, values };
    Kind kind_ = Kind::zero;
    double dt_ = 0.0;
    double sqrt_dt_ = 0.0;
    std::uint64_t seed_ = 0;
    std::uint32_t realization_ = 0;
    std::uint32_t step_ = 0;
    int cutoff_ = 0;
    std::size_t mode_count_ = 0;
    std::shared_ptr<const std::vector<double>> values_;
};

NoiseIncrement sample_increment(const ThetaSpec &theta, double dt, std::uint64_t seed,
                                std::uint32_t realization, std::uint32_t step);

/// epsilon sum_k theta_k sigma_k(x) dW^k at a single point.
Vec2 noise_velocity(const NoiseSpec &spec, const NoiseIncrement &inc, Vec2 x);

namespace reference {
/// Mode-by-mode sum of sigma_eval; slow, used to validate the fast paths.
Vec2 noise_velocity(const NoiseSpec &spec, const NoiseIncrement &inc, Vec2 x);
} // namespace reference

} // namespace vortexmf
