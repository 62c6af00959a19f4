// SPDX-License-Identifier: Apache-2.0
//
// imistat: second-order statistics of the instantaneous mutual information
// of time-varying Rayleigh fading channels
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "imistat/error.hpp"
#include "imistat/tolerance.hpp"

namespace imistat::quad {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    long long evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    int depth;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class F>
Segment gk15(F& f, double a, double b, int depth, double& abs_sum) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kronrod_weights[7];
    double gauss = fc * gauss_weights[3];
    double absk = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kronrod_nodes[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kronrod_weights[j] * (f1 + f2);
        absk += kronrod_weights[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += gauss_weights[j / 2] * (f1 + f2);
    }
    abs_sum += absk * std::abs(half);
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half), depth};
}

}  // namespace detail

/// Adaptive interval-halving Gauss-Kronrod quadrature of f over [a, b].
/// Refines the worst segment until the summed error estimate is below
/// max(abs_tol, rel_tol*|I|). A segment is never split beyond
/// tol.max_quad_refinements halvings.
template <class F>
QuadResult integrate(F&& f, double a, double b, const Tolerance& tol = {}) {
    QuadResult out;
    if (a == b) return out;
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("quad::integrate: limits must be finite");

    double abs_sum = 0.0;
    std::priority_queue<detail::Segment> open;
    std::vector<detail::Segment> frozen;
    auto first = detail::gk15(f, a, b, 0, abs_sum);
    out.evaluations = 15;
    double total = first.value;
    double err = first.error;
    open.push(first);

    constexpr long long max_segments = 20000;
    long long segments = 1;
    const auto target = [&] { return std::max(tol.abs_tol, tol.rel_tol * std::abs(total)); };
    while (err > target() && !open.empty() && segments < max_segments) {
        auto worst = open.top();
        open.pop();
        if (worst.depth >= tol.max_quad_refinements) {
            frozen.push_back(worst);
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        auto left = detail::gk15(f, worst.a, mid, worst.depth + 1, abs_sum);
        auto right = detail::gk15(f, mid, worst.b, worst.depth + 1, abs_sum);
        out.evaluations += 30;
        ++segments;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        open.push(left);
        open.push(right);
    }

    // Re-sum from the leaves so the running update does not accumulate drift.
    total = 0.0;
    err = 0.0;
    for (const auto& s : frozen) {
        total += s.value;
        err += s.error;
    }
    while (!open.empty()) {
        total += open.top().value;
        err += open.top().error;
        open.pop();
    }
    out.value = total;
    out.error = err;
    const double roundoff = 64.0 * std::numeric_limits<double>::epsilon() * abs_sum;
    if (!std::isfinite(total))
        throw DomainError("quad::integrate: integrand produced a non-finite value");
    if (err > std::max({tol.abs_tol, tol.rel_tol * std::abs(total), roundoff}))
        throw AccuracyError("quad::integrate: tolerance not reached", total, out.evaluations);
    return out;
}

/// Integral of f over [a, inf) via x = a - scale*ln(u), u in (0, 1].
/// `scale` should not exceed the e-folding length of the integrand's tail.
template <class F>
QuadResult integrate_to_infinity(F&& f, double a, double scale, const Tolerance& tol = {}) {
    if (!(scale > 0.0)) throw DomainError("quad::integrate_to_infinity: scale must be positive");
    auto mapped = [&](double u) {
        const double x = a - scale * std::log(u);
        const double fx = f(x);
        return fx == 0.0 ? 0.0 : fx * scale / u;
    };
    return integrate(mapped, 0.0, 1.0, tol);
}

}  // namespace imistat::quad
