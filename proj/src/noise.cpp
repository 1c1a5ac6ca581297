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

#include "vortexmf/noise.hpp"

#include "noise_rows.hpp"
#include "vortexmf/compensated.hpp"
#include "vortexmf/error.hpp"
#include "vortexmf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace vortexmf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

double profile_value(const ThetaProfile &p, int cutoff, Mode k)
{
    const long kk = long(k.k1) * k.k1 + long(k.k2) * k.k2;
    switch (p.kind) {
    case ThetaProfile::Kind::inverse: return 1.0 / std::sqrt(double(kk));
    case ThetaProfile::Kind::constant: return p.value;
    case ThetaProfile::Kind::shell: return kk == long(cutoff) * cutoff ? p.value : 0.0;
    case ThetaProfile::Kind::custom: return p.custom(k.k1, k.k2);
    }
    return 0.0;
}
} // namespace

double basis_eval(Mode k, Vec2 x)
{
    if (k.k1 == 0 && k.k2 == 0) return 1.0;
    double ph = two_pi * (k.k1 * x.x1 + k.k2 * x.x2);
    return in_upper(k) ? sqrt2 * std::cos(ph) : sqrt2 * std::sin(ph);
}

double operator_norm(const Mat2 &m)
{
    // Largest singular value from the eigenvalues of m^T m.
    double p = m.a11 * m.a11 + m.a21 * m.a21;
    double q = m.a12 * m.a12 + m.a22 * m.a22;
    double r = m.a11 * m.a12 + m.a21 * m.a22;
    double mean = 0.5 * (p + q);
    double dev = std::hypot(0.5 * (p - q), r);
    return std::sqrt(mean + dev);
}

std::string to_string(ThetaProfile::Kind kind)
{
    switch (kind) {
    case ThetaProfile::Kind::inverse: return "inverse";
    case ThetaProfile::Kind::constant: return "constant";
    case ThetaProfile::Kind::shell: return "shell";
    case ThetaProfile::Kind::custom: return "custom";
    }
    return "unknown";
}

ThetaProfile::Kind profile_kind_from_string(const std::string &name)
{
    if (name == "inverse") return ThetaProfile::Kind::inverse;
    if (name == "constant") return ThetaProfile::Kind::constant;
    if (name == "shell") return ThetaProfile::Kind::shell;
    throw ConfigError("noise.profile: expected inverse, constant or shell, got '" + name + "'");
}

ThetaSpec::ThetaSpec(int cutoff, ThetaProfile profile) : cutoff_(cutoff), profile_(std::move(profile))
{
    if (cutoff < 1) throw DomainError("theta: cutoff must be >= 1");
    if (profile_.kind == ThetaProfile::Kind::custom && !profile_.custom)
        throw DomainError("theta: custom profile without a function");
    half_width_.resize(std::size_t(2 * cutoff + 1));
    offsets_.assign(std::size_t(2 * cutoff + 2), 0);
    const long c2 = long(cutoff) * cutoff;
    for (int k1 = -cutoff; k1 <= cutoff; ++k1) {
        long rem = c2 - long(k1) * k1;
        long h = long(std::sqrt(double(rem)));
        while (h * h > rem) --h;
        while ((h + 1) * (h + 1) <= rem) ++h;
        std::size_t i = std::size_t(k1 + cutoff);
        half_width_[i] = int(h);
        offsets_[i + 1] = offsets_[i] + std::size_t(2 * h + 1) - (k1 == 0 ? 1 : 0);
    }

    CompensatedSum s;
    std::map<long, double> by_shell;
    for_each_mode([&](Mode k) {
        double t = theta(k);
        s.add(t * t);
        if (profile_.kind == ThetaProfile::Kind::custom) {
            long kk = long(k.k1) * k.k1 + long(k.k2) * k.k2;
            auto [it, fresh] = by_shell.emplace(kk, t);
            if (!fresh && it->second != t) radial_ = false;
        }
    });
    norm2_ = s.value();
    if (!(norm2_ > 0.0) || !std::isfinite(norm2_))
        throw DomainError("theta: coefficients vanish identically; epsilon is undefined");
}

double ThetaSpec::theta(Mode k) const { return profile_value(profile_, cutoff_, k); }

int ThetaSpec::row_half_width(int k1) const
{
    if (k1 < -cutoff_ || k1 > cutoff_) return -1;
    return half_width_[std::size_t(k1 + cutoff_)];
}

std::size_t ThetaSpec::mode_index(Mode k) const
{
    int h = row_half_width(k.k1);
    if (h < 0 || k.k2 < -h || k.k2 > h || (k.k1 == 0 && k.k2 == 0))
        throw DomainError("theta: (" + std::to_string(k.k1) + ", " + std::to_string(k.k2) +
                          ") is not an active mode");
    std::size_t idx = row_offset(k.k1) + std::size_t(k.k2 + h);
    if (k.k1 == 0 && k.k2 > 0) --idx;
    return idx;
}

Mode ThetaSpec::mode_at(std::size_t index) const
{
    if (index >= mode_count()) throw DomainError("theta: mode index out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    int k1 = int(it - offsets_.begin()) - 1 - cutoff_;
    int h = row_half_width(k1);
    int k2 = int(index - row_offset(k1)) - h;
    if (k1 == 0 && k2 >= 0) ++k2;
    return {k1, k2};
}

ThetaSpec make_theta(int cutoff, ThetaProfile profile) { return ThetaSpec(cutoff, std::move(profile)); }

double NoiseSpec::epsilon() const
{
    if (!theta) throw DomainError("noise spec: missing theta");
    return 2.0 * std::sqrt(nu) / std::sqrt(theta->norm2());
}

NoiseSpec make_noise_spec(std::shared_ptr<const ThetaSpec> theta, double nu)
{
    if (!theta) throw DomainError("noise spec: missing theta");
    if (!(nu >= 0.0) || !std::isfinite(nu)) throw DomainError("noise spec: nu must be finite and >= 0");
    return {std::move(theta), nu};
}

Vec2 sigma_eval(Mode k, Vec2 x)
{
    if (k.k1 == 0 && k.k2 == 0) throw DomainError("sigma_eval: k = 0 is not a noise mode");
    double kn = std::sqrt(double(k.k1) * k.k1 + double(k.k2) * k.k2);
    return (basis_eval(k, x) / kn) * perp(Vec2{double(k.k1), double(k.k2)});
}

Mat2 covariance(const ThetaSpec &theta, Vec2 x)
{
    CompensatedSum s11, s12, s22;
    theta.for_each_mode([&](Mode k) {
        double t = theta.theta(k);
        if (t == 0.0) return;
        double kk = double(k.k1) * k.k1 + double(k.k2) * k.k2;
        double w = t * t * std::cos(two_pi * (k.k1 * x.x1 + k.k2 * x.x2)) / kk;
        // k-perp (x) k-perp with k-perp = (k2, -k1)
        s11.add(w * k.k2 * k.k2);
        s12.add(-w * k.k1 * k.k2);
        s22.add(w * k.k1 * k.k1);
    });
    return {s11.value(), s12.value(), s12.value(), s22.value()};
}

double verify_isotropy(const ThetaSpec &theta)
{
    Mat2 q = covariance(theta, {0.0, 0.0});
    double half = 0.5 * theta.norm2();
    return std::max({std::abs(q.a11 - half), std::abs(q.a12), std::abs(q.a21),
                     std::abs(q.a22 - half)});
}

std::vector<DecayRow> verify_decay_condition(const std::vector<ThetaSpec> &thetas, Vec2 x, double nu)
{
    if (norm2(x) == 0.0) throw DomainError("decay condition: x must be nonzero");
    std::vector<DecayRow> rows;
    for (const ThetaSpec &t : thetas) {
        double eps2 = 4.0 * nu / t.norm2();
        Mat2 q = covariance(t, x);
        rows.push_back({t.cutoff(), eps2 * operator_norm(q)});
    }
    return rows;
}

NoiseIncrement NoiseIncrement::stream(const ThetaSpec &theta, double dt, std::uint64_t seed,
                                      std::uint32_t realization, std::uint32_t step)
{
    if (!(dt >= 0.0) || !std::isfinite(dt)) throw DomainError("noise increment: dt must be >= 0");
    NoiseIncrement inc;
    inc.kind_ = Kind::stream;
    inc.dt_ = dt;
    inc.sqrt_dt_ = std::sqrt(dt);
    inc.seed_ = seed;
    inc.realization_ = realization;
    inc.step_ = step;
    inc.cutoff_ = theta.cutoff();
    inc.mode_count_ = theta.mode_count();
    return inc;
}

NoiseIncrement NoiseIncrement::zero(const ThetaSpec &theta, double dt)
{
    NoiseIncrement inc;
    inc.kind_ = Kind::zero;
    inc.dt_ = dt;
    inc.cutoff_ = theta.cutoff();
    inc.mode_count_ = theta.mode_count();
    return inc;
}

NoiseIncrement NoiseIncrement::from_values(const ThetaSpec &theta, double dt, std::vector<double> values)
{
    if (values.size() != theta.mode_count())
        throw DomainError("noise increment: expected " + std::to_string(theta.mode_count()) +
                          " values, got " + std::to_string(values.size()));
    NoiseIncrement inc;
    inc.kind_ = Kind::values;
    inc.dt_ = dt;
    inc.cutoff_ = theta.cutoff();
    inc.mode_count_ = theta.mode_count();
    inc.values_ = std::make_shared<const std::vector<double>>(std::move(values));
    return inc;
}

double NoiseIncrement::value(std::size_t index) const
{
    double v;
    fill(index, index + 1, &v);
    return v;
}

void NoiseIncrement::fill(std::size_t begin, std::size_t end, double *out) const
{
    if (end > mode_count_ || begin > end) throw DomainError("noise increment: index out of range");
    switch (kind_) {
    case Kind::zero: std::fill(out, out + (end - begin), 0.0); return;
    case Kind::values: std::copy(values_->begin() + long(begin), values_->begin() + long(end), out); return;
    case Kind::stream: break;
    }
    const PhiloxKey key = key_from_seed(seed_);
    constexpr std::size_t per_block = 2 * normal_block_pairs;
    double block[per_block];
    std::size_t i = begin;
    while (i < end) {
        std::size_t b = i / per_block;
        normal_block(key, std::uint32_t(b), step_, realization_, std::uint32_t(StreamTag::noise), block);
        std::size_t stop = std::min(end, (b + 1) * per_block);
        for (; i < stop; ++i) out[i - begin] = sqrt_dt_ * block[i - b * per_block];
    }
}

void NoiseIncrement::check_compatible(const ThetaSpec &theta) const
{
    if (theta.cutoff() != cutoff_ || theta.mode_count() != mode_count_)
        throw DomainError("noise increment drawn for cutoff " + std::to_string(cutoff_) +
                          " used with spectrum of cutoff " + std::to_string(theta.cutoff()));
}

NoiseIncrement sample_increment(const ThetaSpec &theta, double dt, std::uint64_t seed,
                                std::uint32_t realization, std::uint32_t step)
{
    return NoiseIncrement::stream(theta, dt, seed, realization, step);
}

namespace detail {

void noise_row(const NoiseSpec &spec, double epsilon, const NoiseIncrement &inc, int k1,
               NoiseRow &row, std::vector<double> &dw_plus, std::vector<double> &dw_minus)
{
    const ThetaSpec &th = *spec.theta;
    const int h = th.row_half_width(k1);
    row.k1 = k1;
    row.first = k1 == 0 ? 1 : -h;
    row.last = h;
    row.c.assign(std::size_t(std::max(0, row.last - row.first + 1)), {0.0, 0.0});
    if (row.last < row.first || inc.is_zero()) return;
    const std::size_t len = std::size_t(2 * h + 1) - (k1 == 0 ? 1 : 0);
    dw_plus.resize(len);
    dw_minus.resize(len);
    inc.fill(th.row_offset(k1), th.row_offset(k1) + len, dw_plus.data());
    if (k1 != 0) inc.fill(th.row_offset(-k1), th.row_offset(-k1) + len, dw_minus.data());
    for (int k2 = row.first; k2 <= row.last; ++k2) {
        double wp, wm;
        if (k1 == 0) {
            wp = dw_plus[std::size_t(k2 + h - 1)];
            wm = dw_plus[std::size_t(-k2 + h)];
        } else {
            wp = dw_plus[std::size_t(k2 + h)];
            wm = dw_minus[std::size_t(-k2 + h)];
        }
        double t = th.theta({k1, k2});
        double kn = std::sqrt(double(k1) * k1 + double(k2) * k2);
        double a = epsilon * t * sqrt2 / kn;
        row.c[std::size_t(k2 - row.first)] = {a * wp, -a * wm};
    }
}

} // namespace detail

Vec2 noise_velocity(const NoiseSpec &spec, const NoiseIncrement &inc, Vec2 x)
{
    inc.check_compatible(*spec.theta);
    const double eps = spec.epsilon();
    detail::NoiseRow row;
    std::vector<double> wp, wm;
    double u1 = 0.0, u2 = 0.0;
    const std::complex<double> step = std::polar(1.0, two_pi * x.x2);
    for (int k1 = 0; k1 <= spec.theta->cutoff(); ++k1) {
        detail::noise_row(spec, eps, inc, k1, row, wp, wm);
        if (row.c.empty()) continue;
        std::complex<double> e = std::polar(1.0, two_pi * row.first * x.x2);
        std::complex<double> s0 = 0.0, s1 = 0.0;
        for (int k2 = row.first; k2 <= row.last; ++k2) {
            std::complex<double> term = row.c[std::size_t(k2 - row.first)] * e;
            s0 += term;
            s1 += double(k2) * term;
            e *= step;
        }
        std::complex<double> e1 = std::polar(1.0, two_pi * k1 * x.x1);
        u1 += (e1 * s1).real();
        u2 -= k1 * (e1 * s0).real();
    }
    return {u1, u2};
}

namespace reference {
Vec2 noise_velocity(const NoiseSpec &spec, const NoiseIncrement &inc, Vec2 x)
{
    inc.check_compatible(*spec.theta);
    const double eps = spec.epsilon();
    Vec2 u;
    std::size_t idx = 0;
    spec.theta->for_each_mode([&](Mode k) {
        double w = inc.value(idx++);
        u += (eps * spec.theta->theta(k) * w) * sigma_eval(k, x);
    });
    return u;
}
} // namespace reference

} // namespace vortexmf
