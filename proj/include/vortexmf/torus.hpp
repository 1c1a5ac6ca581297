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

#include <cmath>
#include <span>
#include <vector>

namespace vortexmf {

/// Free planar vector: velocities, displacements, raw coordinates.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2 &operator+=(Vec2 o) { x1 += o.x1; x2 += o.x2; return *this; }
    constexpr Vec2 &operator-=(Vec2 o) { x1 -= o.x1; x2 -= o.x2; return *this; }
    constexpr Vec2 &operator*=(double s) { x1 *= s; x2 *= s; return *this; }
    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
    friend constexpr Vec2 operator-(Vec2 a) { return {-a.x1, -a.x2}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double norm2(Vec2 v) { return v.x1 * v.x1 + v.x2 * v.x2; }
inline double norm(Vec2 v) { return std::sqrt(norm2(v)); }
inline double dot(Vec2 a, Vec2 b) { return a.x1 * b.x1 + a.x2 * b.x2; }
/// x⊥ = (x2, -x1).
constexpr Vec2 perp(Vec2 v) { return {v.x2, -v.x1}; }

/// Reduces a finite coordinate modulo 1 into [-1/2, 1/2). No finiteness check.
inline double wrap_coordinate(double x)
{
    double y = x - std::floor(x + 0.5);
    // x + 0.5 can round up to the next integer just below a half-integer.
    if (y < -0.5) y += 1.0;
    else if (y >= 0.5) y -= 1.0;
    return y;
}

/// Point of the flat torus [-1/2, 1/2)^2. Always stored wrapped.
class TorusPoint {
public:
    constexpr TorusPoint() = default;

    double x1() const { return x1_; }
    double x2() const { return x2_; }
    Vec2 vec() const { return {x1_, x2_}; }

    friend bool operator==(const TorusPoint &, const TorusPoint &) = default;

    /// Wraps without validating finiteness; hot-path helper.
    static TorusPoint wrap_unchecked(Vec2 p)
    {
        TorusPoint t;
        t.x1_ = wrap_coordinate(p.x1);
        t.x2_ = wrap_coordinate(p.x2);
        return t;
    }

private:
    double x1_ = 0.0;
    double x2_ = 0.0;
};

/// Wraps a raw planar point onto the torus. Throws DomainError on non-finite input.
TorusPoint wrap(Vec2 p);

/// Minimal-image displacement a - b, each component in [-1/2, 1/2).
inline Vec2 torus_diff(const TorusPoint &a, const TorusPoint &b)
{
    return {wrap_coordinate(a.x1() - b.x1()), wrap_coordinate(a.x2() - b.x2())};
}

/// Euclidean length of the minimal-image displacement.
inline double torus_distance(const TorusPoint &a, const TorusPoint &b)
{
    return norm(torus_diff(a, b));
}

} // namespace vortexmf
