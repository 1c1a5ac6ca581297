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

#include "vortexmf/kernel.hpp"

#include "vortexmf/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace vortexmf {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr double euler_gamma = std::numbers::egamma;
// e^{-z} underflows past this; image terms beyond it are exactly zero in double.
constexpr double z_negligible = 745.0;

double ewald_alpha(int cutoff) { return cutoff / 3.0; }

void check_cutoff(int cutoff)
{
    if (cutoff < 8) throw DomainError("Ewald cutoff must be >= 8, got " + std::to_string(cutoff));
}

// E1(z) + log z = Ein(z) - gamma, with Ein by its power series for small z.
double e1_plus_log(double z)
{
    if (z <= 1.0) {
        double term = 1.0, sum = 0.0;
        for (int n = 1; n < 40; ++n) {
            term *= -z / n;
            double add = -term / n;
            sum += add;
            if (std::abs(add) < 1e-18 * std::abs(sum)) break;
        }
        return sum - euler_gamma;
    }
    return -std::expint(-z) + std::log(z);
}

double e1(double z) { return -std::expint(-z); }

// Weight of mode k in the long-range part.
double fourier_weight(int k1, int k2, double alpha)
{
    double kk = double(k1) * k1 + double(k2) * k2;
    return std::exp(-pi * pi * kk / (alpha * alpha)) / kk;
}

struct Parts {
    double scalar = 0.0; // r(x)
    Vec2 grad;           // grad r(x)
};

// Smooth remainder r = G - (1/2pi) log|x| and its gradient, by direct summation.
Parts remainder_parts(Vec2 x, int cutoff)
{
    const double alpha = ewald_alpha(cutoff);
    const double a2 = alpha * alpha;
    Parts p;

    const double rho2 = norm2(x);
    const double z = a2 * rho2;
    p.scalar = -(1.0 / (4.0 * pi)) * e1_plus_log(z) + std::log(alpha) / two_pi;
    if (z > 1e-12) {
        p.grad = (std::expm1(-z) / (two_pi * rho2)) * x;
    } else {
        p.grad = (-a2 / two_pi) * x;
    }

    for (int m1 = -1; m1 <= 1; ++m1)
        for (int m2 = -1; m2 <= 1; ++m2) {
            if (m1 == 0 && m2 == 0) continue;
            Vec2 y{x.x1 + m1, x.x2 + m2};
            double rm2 = norm2(y);
            double zm = a2 * rm2;
            if (zm > z_negligible) continue;
            p.scalar -= e1(zm) / (4.0 * pi);
            p.grad += (std::exp(-zm) / (two_pi * rm2)) * y;
        }

    p.scalar += 1.0 / (4.0 * a2);

    double fs = 0.0, g1 = 0.0, g2 = 0.0;
    for (int k1 = -cutoff; k1 <= cutoff; ++k1) {
        int h = int(std::floor(std::sqrt(double(cutoff) * cutoff - double(k1) * k1)));
        for (int k2 = -h; k2 <= h; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            double w = fourier_weight(k1, k2, alpha);
            double ph = two_pi * (k1 * x.x1 + k2 * x.x2);
            double s = std::sin(ph);
            fs += w * std::cos(ph);
            g1 += w * k1 * s;
            g2 += w * k2 * s;
        }
    }
    p.scalar -= fs / (4.0 * pi * pi);
    p.grad += Vec2{g1 / two_pi, g2 / two_pi};
    return p;
}

} // namespace

double green_remainder_direct(Vec2 x, int cutoff)
{
    check_cutoff(cutoff);
    if (norm2(x) == 0.0) throw SingularityError("green remainder: log|x| undefined at x = 0");
    return remainder_parts(x, cutoff).scalar;
}

Vec2 remainder_perp_gradient_direct(Vec2 x, int cutoff)
{
    check_cutoff(cutoff);
    return perp(remainder_parts(x, cutoff).grad);
}

double green(const TorusPoint &x, int cutoff)
{
    check_cutoff(cutoff);
    double rho2 = norm2(x.vec());
    if (rho2 == 0.0) throw SingularityError("green: G is singular at x = 0");
    return std::log(rho2) / (4.0 * pi) + remainder_parts(x.vec(), cutoff).scalar;
}

Vec2 biot_savart_direct(Vec2 x, int cutoff)
{
    check_cutoff(cutoff);
    double rho2 = norm2(x);
    if (rho2 == 0.0) throw SingularityError("biot_savart_direct: K is singular at x = 0");
    Vec2 g = remainder_parts(x, cutoff).grad + (1.0 / (two_pi * rho2)) * x;
    return perp(g);
}

std::vector<Vec2> KernelEvaluator::validation_points()
{
    // R2 low-discrepancy sequence; deterministic and well spread.
    constexpr double g1 = 0.7548776662466927;
    constexpr double g2 = 0.5698402909980532;
    std::vector<Vec2> pts;
    pts.push_back({0.25, 0.0});
    for (int n = 1; pts.size() < 100; ++n) {
        Vec2 p{std::fmod(0.5 + n * g1, 1.0) - 0.5, std::fmod(0.5 + n * g2, 1.0) - 0.5};
        if (norm(p) >= 0.01) pts.push_back(p);
    }
    return pts;
}

KernelEvaluator::KernelEvaluator(int mode_cutoff, int table_resolution, double delta_min)
    : mode_cutoff_(mode_cutoff), resolution_(table_resolution), stride_(table_resolution + 3),
      h_(0.5 / table_resolution), delta_min_(delta_min)
{
    if (mode_cutoff < 64)
        throw DomainError("kernel evaluator: mode_cutoff must be >= 64, got " +
                          std::to_string(mode_cutoff));
    if (table_resolution < 256)
        throw DomainError("kernel evaluator: table_resolution must be >= 256, got " +
                          std::to_string(table_resolution));
    if (!(delta_min > 0.0) || delta_min > 1e-2)
        throw DomainError("kernel evaluator: delta_min must lie in (0, 1e-2]");

    const int n = stride_;
    const int c = mode_cutoff_;
    const int nk = 2 * c + 1;
    const double alpha = ewald_alpha(c);
    const double a2 = alpha * alpha;
    auto coord = [&](int idx) { return (idx - 1) * h_; };

    r_.assign(std::size_t(n) * n, 0.0);
    std::vector<double> d1(std::size_t(n) * n, 0.0), d2(std::size_t(n) * n, 0.0);

    // Long-range part is separable: sum_k w_k cos(2pi k1 x1) cos(2pi k2 x2) and its
    // derivatives, evaluated as two dense products.
    std::vector<double> w(std::size_t(nk) * nk, 0.0);
    for (int k1 = -c; k1 <= c; ++k1)
        for (int k2 = -c; k2 <= c; ++k2)
            if ((k1 || k2) && k1 * k1 + k2 * k2 <= c * c)
                w[std::size_t(k1 + c) * nk + (k2 + c)] = fourier_weight(k1, k2, alpha);
    std::vector<double> cs(std::size_t(n) * nk), sn(std::size_t(n) * nk);
    for (int i = 0; i < n; ++i)
        for (int k = -c; k <= c; ++k) {
            double ph = two_pi * k * coord(i);
            cs[std::size_t(i) * nk + k + c] = std::cos(ph);
            sn[std::size_t(i) * nk + k + c] = std::sin(ph);
        }
    // m_c[k1][j] = sum_k2 w cos(2pi k2 y_j), m_s[k1][j] = sum_k2 w k2 sin(2pi k2 y_j)
    std::vector<double> m_c(std::size_t(nk) * n, 0.0), m_s(std::size_t(nk) * n, 0.0);
#pragma omp parallel for schedule(static)
    for (int k1 = 0; k1 < nk; ++k1)
        for (int j = 0; j < n; ++j) {
            double acc_c = 0.0, acc_s = 0.0;
            for (int k2 = 0; k2 < nk; ++k2) {
                double wk = w[std::size_t(k1) * nk + k2];
                acc_c += wk * cs[std::size_t(j) * nk + k2];
                acc_s += wk * (k2 - c) * sn[std::size_t(j) * nk + k2];
            }
            m_c[std::size_t(k1) * n + j] = acc_c;
            m_s[std::size_t(k1) * n + j] = acc_s;
        }
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double f = 0.0, g1 = 0.0, g2 = 0.0;
            for (int k1 = 0; k1 < nk; ++k1) {
                double cc = cs[std::size_t(i) * nk + k1];
                double mc = m_c[std::size_t(k1) * n + j];
                f += cc * mc;
                g1 += (k1 - c) * sn[std::size_t(i) * nk + k1] * mc;
                g2 += cc * m_s[std::size_t(k1) * n + j];
            }
            std::size_t idx = std::size_t(i) * n + j;
            r_[idx] = -f / (4.0 * pi * pi);
            d1[idx] = g1 / two_pi;
            d2[idx] = g2 / two_pi;
        }

    // Short-range images and the zero-image remainder, pointwise.
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Vec2 x{coord(i), coord(j)};
            double rho2 = norm2(x);
            double z = a2 * rho2;
            double s = -(1.0 / (4.0 * pi)) * e1_plus_log(z) + std::log(alpha) / two_pi +
                       1.0 / (4.0 * a2);
            Vec2 g = z > 1e-12 ? (std::expm1(-z) / (two_pi * rho2)) * x : (-a2 / two_pi) * x;
            for (int m1 = -1; m1 <= 1; ++m1)
                for (int m2 = -1; m2 <= 1; ++m2) {
                    if (m1 == 0 && m2 == 0) continue;
                    Vec2 y{x.x1 + m1, x.x2 + m2};
                    double rm2 = norm2(y);
                    double zm = a2 * rm2;
                    if (zm > z_negligible) continue;
                    s -= e1(zm) / (4.0 * pi);
                    g += (std::exp(-zm) / (two_pi * rm2)) * y;
                }
            std::size_t idx = std::size_t(i) * n + j;
            r_[idx] += s;
            d1[idx] += g.x1;
            d2[idx] += g.x2;
        }

    // grad-perp r = (d2 r, -d1 r)
    k1_ = std::move(d2);
    k2_ = std::move(d1);
    for (double &v : k2_) v = -v;

    for (Vec2 p : validation_points()) {
        Vec2 kd = biot_savart_direct(p, c);
        Vec2 ke = biot_savart(p);
        double gd = vortexmf::green(TorusPoint::wrap_unchecked(p), c);
        double ge = green(p);
        build_residual_ = std::max({build_residual_, std::abs(kd.x1 - ke.x1),
                                    std::abs(kd.x2 - ke.x2), std::abs(gd - ge)});
    }
    if (!(build_residual_ <= accuracy_target)) {
        std::ostringstream msg;
        msg << "kernel evaluator: residual " << build_residual_ << " exceeds "
            << accuracy_target << " at resolution " << resolution_ << ", cutoff " << mode_cutoff_;
        throw Error(msg.str());
    }

    // c0 from the max of G on a 1024^2 grid, raised to dominate r on |x| <= 1/2.
    // G is even in each coordinate, so the quarter grid [0, 1/2]^2 suffices.
    double gmax = -INFINITY, rmax = -INFINITY;
    for (int i = 0; i <= 512; ++i)
        for (int j = 0; j <= 512; ++j) {
            Vec2 x{i / 1024.0, j / 1024.0};
            if (i || j) gmax = std::max(gmax, green(x));
            if (norm2(x) <= 0.25) {
                Stencil st = stencil(x.x1, x.x2);
                rmax = std::max(rmax, interp(r_, st));
            }
        }
    c0_ = std::max(gmax + 1e-3, rmax);
}

KernelEvaluator::Stencil KernelEvaluator::stencil(double a1, double a2) const
{
    auto axis = [&](double a, int &i0, double *wt) {
        double s = a / h_;
        int i = std::min(int(s), resolution_ - 1);
        double t = s - i;
        double t2 = t * t, t3 = t2 * t;
        wt[0] = 0.5 * (-t + 2.0 * t2 - t3);
        wt[1] = 0.5 * (2.0 - 5.0 * t2 + 3.0 * t3);
        wt[2] = 0.5 * (t + 4.0 * t2 - 3.0 * t3);
        wt[3] = 0.5 * (-t2 + t3);
        i0 = i; // array index of node i-1 is (i-1)+1
    };
    Stencil s;
    axis(a1, s.i0, s.wx);
    axis(a2, s.j0, s.wy);
    return s;
}

double KernelEvaluator::interp(const std::vector<double> &t, const Stencil &s) const
{
    double acc = 0.0;
    for (int a = 0; a < 4; ++a) {
        const double *row = t.data() + std::size_t(s.i0 + a) * stride_ + s.j0;
        double v = s.wy[0] * row[0] + s.wy[1] * row[1] + s.wy[2] * row[2] + s.wy[3] * row[3];
        acc += s.wx[a] * v;
    }
    return acc;
}

Vec2 KernelEvaluator::biot_savart(Vec2 x) const
{
    const double a1 = std::abs(x.x1), a2 = std::abs(x.x2);
    const double rho2 = a1 * a1 + a2 * a2;
    if (rho2 == 0.0) return {0.0, 0.0};
    const double rho = std::sqrt(rho2);
    const double s = rho >= delta_min_ ? 1.0 / (two_pi * rho2) : 1.0 / (two_pi * rho * delta_min_);
    Stencil st = stencil(a1, a2);
    double k1 = a2 * s + interp(k1_, st);
    double k2 = -a1 * s + interp(k2_, st);
    // K1 is odd and periodic in x2, K2 in x1: both vanish on the symmetry lines.
    if (a2 == 0.0 || a2 == 0.5) k1 = 0.0;
    if (a1 == 0.0 || a1 == 0.5) k2 = 0.0;
    return {x.x2 < 0.0 ? -k1 : k1, x.x1 < 0.0 ? -k2 : k2};
}

double KernelEvaluator::green(Vec2 x) const
{
    const double a1 = std::abs(x.x1), a2 = std::abs(x.x2);
    const double rho = std::sqrt(a1 * a1 + a2 * a2);
    return std::log(std::max(rho, delta_min_)) / two_pi + interp(r_, stencil(a1, a2));
}

std::vector<Vec2> pairwise_drift(const KernelEvaluator &e, std::span<const TorusPoint> x,
                                 double *min_distance)
{
    const std::size_t n = x.size();
    std::vector<Vec2> v(n);
    const double inv_n = n ? 1.0 / double(n) : 0.0;
    double min_d2 = INFINITY;
#pragma omp parallel for schedule(static) reduction(min : min_d2)
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 acc;
        const TorusPoint xi = x[i];
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Vec2 d = torus_diff(xi, x[j]);
            min_d2 = std::min(min_d2, norm2(d));
            acc += e.biot_savart(d);
        }
        v[i] = inv_n * acc;
    }
    if (min_distance) *min_distance = n > 1 ? std::sqrt(min_d2) : 0.0;
    return v;
}

namespace reference {
std::vector<Vec2> pairwise_drift(const KernelEvaluator &e, std::span<const TorusPoint> x)
{
    const std::size_t n = x.size();
    std::vector<Vec2> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        Vec2 acc;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) acc += e.biot_savart(torus_diff(x[i], x[j]));
        v[i] = (1.0 / double(n)) * acc;
    }
    return v;
}
} // namespace reference

} // namespace vortexmf
