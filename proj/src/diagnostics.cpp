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

#include "vortexmf/diagnostics.hpp"

#include "vortexmf/error.hpp"
#include "vortexmf/noise_field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace vortexmf {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

// Sum over unordered pairs i < j of f(x_i - x_j), with per-row partial sums added in
// row order so the total is independent of the thread count.
template <class F> double pair_sum(std::span<const TorusPoint> x, F f)
{
    const std::size_t n = x.size();
    std::vector<double> row(n, 0.0);
#pragma omp parallel for schedule(dynamic, 16)
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) acc += f(torus_diff(x[i], x[j]));
        row[i] = acc;
    }
    double total = 0.0;
    for (double v : row) total += v;
    return total;
}

Vec2 basis_gradient(Mode k, Vec2 x)
{
    double ph = two_pi * (k.k1 * x.x1 + k.k2 * x.x2);
    double f = in_upper(k) ? -two_pi * sqrt2 * std::sin(ph) : two_pi * sqrt2 * std::cos(ph);
    return {f * k.k1, f * k.k2};
}
} // namespace

std::string mode_label(Mode k) { return std::to_string(k.k1) + "_" + std::to_string(k.k2); }

double empirical_mode(std::span<const TorusPoint> x, Mode k)
{
    if (k.k1 == 0 && k.k2 == 0) return 1.0;
    if (x.empty()) throw DomainError("empirical_mode: empty ensemble");
    double s = 0.0;
    for (const TorusPoint &p : x) s += basis_eval(k, p.vec());
    return s / double(x.size());
}

std::vector<Mode> modes_in_disk(int radius)
{
    std::vector<Mode> out;
    for (int k1 = -radius; k1 <= radius; ++k1)
        for (int k2 = -radius; k2 <= radius; ++k2)
            if ((k1 || k2) && k1 * k1 + k2 * k2 <= radius * radius) out.push_back({k1, k2});
    return out;
}

double sobolev_neg_norm(std::span<const TorusPoint> x, double s, int window)
{
    if (!(s > 1.0)) throw DomainError("sobolev_neg_norm: s must exceed 1");
    if (window < 1) throw DomainError("sobolev_neg_norm: window must be >= 1");
    if (x.empty()) throw DomainError("sobolev_neg_norm: empty ensemble");
    const double inv_n = 1.0 / double(x.size());
    double total = 1.0;
    // Each upper mode k pairs with -k: <S,e_k>^2 + <S,e_-k>^2 = 2 |P(k)|^2.
    for (int k1 = 0; k1 <= window; ++k1)
        for (int k2 = -window; k2 <= window; ++k2) {
            Mode k{k1, k2};
            if (!in_upper(k) || k1 * k1 + k2 * k2 > window * window) continue;
            double re = 0.0, im = 0.0;
            for (const TorusPoint &p : x) {
                double ph = two_pi * (k1 * p.x1() + k2 * p.x2());
                re += std::cos(ph);
                im += std::sin(ph);
            }
            double p2 = (re * re + im * im) * inv_n * inv_n;
            total += 2.0 * p2 / std::pow(1.0 + double(k1) * k1 + double(k2) * k2, s);
        }
    return std::sqrt(total);
}

double hamiltonian(std::span<const TorusPoint> x, const KernelEvaluator &e, double c0)
{
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double s = pair_sum(x, [&](Vec2 d) { return c0 - e.green(d); });
    return 2.0 * s / (double(n) * double(n));
}

double interaction_energy(std::span<const TorusPoint> x, const KernelEvaluator &e)
{
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double s = pair_sum(x, [&](Vec2 d) { return -e.green(d); });
    return 2.0 * s / (double(n) * double(n));
}

double concentration_stat(std::span<const TorusPoint> x, double r, int grid)
{
    if (!(r > 0.0 && r < 0.25)) throw DomainError("concentration_stat: r must lie in (0, 1/4)");
    if (grid == 0) grid = int(std::ceil(4.0 / r));
    if (grid < int(std::ceil(2.0 / r))) throw DomainError("concentration_stat: grid must be >= 2/r");
    if (x.empty()) throw DomainError("concentration_stat: empty ensemble");
    const double r2 = r * r;
    std::size_t best = 0;
#pragma omp parallel for schedule(static) reduction(max : best)
    for (int c = 0; c < grid * grid; ++c) {
        TorusPoint centre = TorusPoint::wrap_unchecked({double(c / grid) / grid - 0.5,
                                                         double(c % grid) / grid - 0.5});
        std::size_t count = 0;
        for (const TorusPoint &p : x)
            if (norm2(torus_diff(p, centre)) <= r2) ++count;
        best = std::max(best, count);
    }
    return double(best) / double(x.size());
}

double concentration_bound(std::size_t n, double hamiltonian_value, double r)
{
    return 1.0 / std::sqrt(double(n)) +
           std::sqrt(two_pi * std::max(0.0, hamiltonian_value) / std::log(1.0 / (2.0 * r)));
}

double min_pair_distance(std::span<const TorusPoint> x)
{
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double best = INFINITY;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : best)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) best = std::min(best, norm2(torus_diff(x[i], x[j])));
    return std::sqrt(best);
}

MartingaleState::MartingaleState(std::vector<Mode> test_modes)
    : modes(std::move(test_modes)), value(modes.size(), 0.0), sup_abs(modes.size(), 0.0),
      qv(modes.size(), 0.0)
{
    for (Mode k : modes)
        if (k.k1 == 0 && k.k2 == 0) throw DomainError("martingale: test mode must be nonzero");
}

void martingale_accumulate(MartingaleState &state, std::span<const TorusPoint> x,
                           std::span<const Vec2> d, std::span<const double> qv_rates, double dt)
{
    if (d.size() != x.size()) throw DomainError("martingale: displacement count mismatch");
    if (!qv_rates.empty() && qv_rates.size() != state.modes.size())
        throw DomainError("martingale: quadratic-variation rate count mismatch");
    const double inv_n = x.empty() ? 0.0 : 1.0 / double(x.size());
    for (std::size_t q = 0; q < state.modes.size(); ++q) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += dot(basis_gradient(state.modes[q], x[i].vec()), d[i]);
        state.value[q] += s * inv_n;
        state.sup_abs[q] = std::max(state.sup_abs[q], std::abs(state.value[q]));
        if (!qv_rates.empty()) state.qv[q] += qv_rates[q] * dt;
    }
}

void martingale_accumulate(MartingaleState &state, std::span<const TorusPoint> x,
                           const NoiseField &field, const NoiseIncrement &inc, bool track_qv)
{
    inc.check_compatible(*field.spec().theta);
    std::vector<Vec2> d = field.displacements(inc, x);
    std::vector<double> rates;
    if (track_qv) rates = quadratic_variation_rates(field.spec(), x, state.modes);
    martingale_accumulate(state, x, d, rates, inc.dt());
}

PairHistogram::PairHistogram(int bins) : bins_(bins)
{
    if (bins < 1 || bins > 64) throw DomainError("pair histogram: bins must lie in [1, 64]");
    std::size_t cells = std::size_t(bins) * bins;
    counts_.assign(cells * cells, 0);
}

void PairHistogram::add(std::span<const TorusPoint> x)
{
    const std::size_t cells = std::size_t(bins_) * bins_;
    std::vector<std::uint64_t> occ(cells, 0);
    auto bin = [&](double v) { return std::min(bins_ - 1, int((v + 0.5) * bins_)); };
    for (const TorusPoint &p : x) ++occ[std::size_t(bin(p.x1())) * bins_ + std::size_t(bin(p.x2()))];
    for (std::size_t a = 0; a < cells; ++a) {
        if (!occ[a]) continue;
        for (std::size_t b = 0; b < cells; ++b)
            counts_[a * cells + b] += occ[a] * (a == b ? occ[b] - 1 : occ[b]);
    }
    std::uint64_t n = x.size();
    total_ += n * (n > 0 ? n - 1 : 0);
}

void PairHistogram::merge(const PairHistogram &other)
{
    if (other.bins_ != bins_) throw DomainError("pair histogram: bin mismatch in merge");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
    total_ += other.total_;
}

double entropy2_estimate(const PairHistogram &h)
{
    if (h.total() == 0) throw DomainError("entropy estimate: empty histogram");
    const double total = double(h.total());
    const double inv_vol = std::pow(double(h.bins()), 4);
    double s = 0.0;
    for (std::uint64_t c : h.counts())
        if (c) {
            double p = double(c) / total;
            s += p * std::log(p * inv_vol);
        }
    return 0.5 * s;
}

double binned_product_entropy(const DensitySpec &f0, int bins)
{
    if (bins < 1) throw DomainError("binned entropy: bins must be >= 1");
    using cplx = std::complex<double>;
    auto segment = [](int k, double a, double b) -> cplx {
        if (k == 0) return b - a;
        return (std::polar(1.0, two_pi * k * b) - std::polar(1.0, two_pi * k * a)) / cplx(0.0, two_pi * k);
    };
    const double w = 1.0 / bins;
    double s = 0.0;
    for (int i = 0; i < bins; ++i)
        for (int j = 0; j < bins; ++j) {
            double u0 = i * w - 0.5, v0 = j * w - 0.5;
            double m = w * w;
            for (const DensityTerm &t : f0.terms()) {
                cplx z = segment(t.k.k1, u0, u0 + w) * segment(t.k.k2, v0, v0 + w);
                m += t.amplitude * sqrt2 * (in_upper(t.k) ? z.real() : z.imag());
            }
            if (m > 0.0) s += m * std::log(m * bins * bins);
        }
    // (1/2) sum_{A,B} m_A m_B log(m_A m_B b^4) = sum_A m_A log(m_A b^2)
    return s;
}

MomentScan increment_moment_scan(const std::vector<std::vector<double>> &series,
                                 const std::vector<int> &lags)
{
    if (series.size() < 32) throw DomainError("moment scan: at least 32 seeds are required");
    const std::size_t len = series.front().size();
    for (const auto &s : series)
        if (s.size() != len) throw DomainError("moment scan: series lengths differ");
    MomentScan out;
    out.lags = lags;
    const double r = double(series.size());
    for (int lag : lags) {
        if (lag < 1 || std::size_t(lag) >= len) throw DomainError("moment scan: lag outside the horizon");
        double mean = 0.0, sq = 0.0;
        for (const auto &s : series) {
            double acc = 0.0;
            for (std::size_t t = 0; t + std::size_t(lag) < len; ++t) {
                double d = s[t + std::size_t(lag)] - s[t];
                acc += d * d * d * d;
            }
            acc /= double(len - std::size_t(lag));
            mean += acc;
            sq += acc * acc;
        }
        mean /= r;
        double var = std::max(0.0, sq / r - mean * mean) * r / (r - 1.0);
        out.moments.push_back(mean);
        out.std_errors.push_back(std::sqrt(var / r));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    bool positive = true;
    for (std::size_t i = 0; i < lags.size(); ++i) {
        if (!(out.moments[i] > 0.0)) positive = false;
        double lx = std::log(double(lags[i])), ly = std::log(out.moments[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double m = double(lags.size());
    out.slope = positive && lags.size() >= 2 ? (m * sxy - sx * sy) / (m * sxx - sx * sx)
                                             : std::numeric_limits<double>::quiet_NaN();
    return out;
}

} // namespace vortexmf
