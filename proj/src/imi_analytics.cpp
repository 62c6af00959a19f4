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

#include "imistat/imi_analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "imistat/error.hpp"
#include "imistat/specfun.hpp"
#include "nb_series.hpp"

namespace imistat {

namespace {

using specfun::gamma_exp;
using specfun::log2e;
using specfun::pi2_over_6;
constexpr double pi2 = std::numbers::pi * std::numbers::pi;

double eta_over_m(const SnrPoint& snr, const AntennaConfig& antennas) { return snr.linear() / antennas.m; }

// sum_k w_k xi_normalized(k+mn-1, a, lambda)^2, in nats^2.
double acf_series_nats(int mn, double a, double t, const Tolerance& tol) {
    const double lambda = 1.0 / (1.0 - t);
    return detail::nb_series(
        mn, t,
        [&](long long k, double w) {
            if (w == 0.0) return 0.0;
            const double x = specfun::xi_normalized(k + mn - 1, a, lambda, tol);
            return w * x * x;
        },
        tol, "ACF series");
}

double high_snr_log(const SnrPoint& snr, const AntennaConfig& antennas) {
    return std::log(snr.linear() / (antennas.m * gamma_exp));
}

}  // namespace

double imi_sample(double alpha_sq, const SnrPoint& snr) {
    if (!(alpha_sq >= 0.0)) throw DomainError("imi_sample: alpha^2 must be >= 0");
    return std::log2(1.0 + snr.linear() * alpha_sq);
}

double imi_sample_ostbc(double gain_sum, const SnrPoint& snr, const AntennaConfig& antennas) {
    if (!(gain_sum >= 0.0)) throw DomainError("imi_sample_ostbc: gain sum must be >= 0");
    return std::log2(1.0 + eta_over_m(snr, antennas) * gain_sum);
}

double siso_mean(const SnrPoint& snr) { return log2e * specfun::exp_int_gamma0_scaled(1.0 / snr.linear()); }

double siso_moment2(const SnrPoint& snr, const Tolerance& tol) {
    return log2e * log2e * specfun::log_moment2_weighted(1, snr.linear(), tol);
}

double ostbc_mean(const SnrPoint& snr, const AntennaConfig& antennas, const Tolerance& tol) {
    return log2e * specfun::xi_normalized(antennas.product() - 1, eta_over_m(snr, antennas), 1.0, tol);
}

double ostbc_moment2(const SnrPoint& snr, const AntennaConfig& antennas, const Tolerance& tol) {
    return log2e * log2e * specfun::log_moment2_weighted(antennas.product(), eta_over_m(snr, antennas), tol);
}

ImiMoments imi_moments(const SnrPoint& snr, const AntennaConfig& antennas, const Tolerance& tol) {
    return {ostbc_mean(snr, antennas, tol), ostbc_moment2(snr, antennas, tol)};
}

ExactStats exact_stats(const ImiMoments& moments, const SnrPoint& snr, const AntennaConfig& antennas,
                       double varrho, const Tolerance& tol) {
    if (!(varrho >= 0.0)) throw DomainError("exact_stats: varrho must be >= 0");
    if (varrho >= 1.0) return {moments.moment2, 1.0, 1.0};
    const double m1sq = moments.mean * moments.mean;
    if (varrho == 0.0) return {m1sq, m1sq / moments.moment2, 0.0};
    const LagContext ctx(varrho);
    const double acf =
        log2e * log2e * acf_series_nats(antennas.product(), eta_over_m(snr, antennas), ctx.t(), tol);
    return {acf, acf / moments.moment2, (acf - m1sq) / (moments.moment2 - m1sq)};
}

double ostbc_acf_exact(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                       const Tolerance& tol) {
    return log2e * log2e * acf_series_nats(antennas.product(), eta_over_m(snr, antennas), ctx.t(), tol);
}

double ostbc_nacf_exact(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                        const Tolerance& tol) {
    return exact_stats(imi_moments(snr, antennas, tol), snr, antennas, ctx.varrho(), tol).nacf;
}

double ostbc_coeff_exact(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                         const Tolerance& tol) {
    return exact_stats(imi_moments(snr, antennas, tol), snr, antennas, ctx.varrho(), tol).coeff;
}

double siso_acf_exact(const SnrPoint& snr, const LagContext& ctx, const Tolerance& tol) {
    return ostbc_acf_exact(snr, AntennaConfig{1, 1}, ctx, tol);
}

double siso_nacf_exact(const SnrPoint& snr, const LagContext& ctx, const Tolerance& tol) {
    return ostbc_nacf_exact(snr, AntennaConfig{1, 1}, ctx, tol);
}

double siso_coeff_exact(const SnrPoint& snr, const LagContext& ctx, const Tolerance& tol) {
    return ostbc_coeff_exact(snr, AntennaConfig{1, 1}, ctx, tol);
}

double siso_nacf_low(const LagContext& ctx) { return 0.5 * (1.0 + ctx.t()); }

double siso_coeff_low(const LagContext& ctx) { return ctx.t(); }

double siso_nacf_high(const SnrPoint& snr, const LagContext& ctx) {
    const double l = std::log(snr.linear() / gamma_exp);
    return (specfun::dilog(ctx.t()) + l * l) / (pi2_over_6 + l * l);
}

double siso_coeff_high(const LagContext& ctx) { return specfun::dilog(ctx.t()) / pi2_over_6; }

double siso_coeff_piecewise(const SnrPoint& snr, const LagContext& ctx) {
    // Same conversion as SnrPoint::from_db so that 6.5 dB and 16 dB land on their own branch.
    static const double low_edge = std::pow(10.0, 6.5 / 10.0);
    static const double high_edge = std::pow(10.0, 16.0 / 10.0);
    const double eta = snr.linear();
    const double t = ctx.t();
    if (eta <= low_edge) return t;
    if (eta <= high_edge) return 0.5 * t + 3.0 * specfun::dilog(t) / pi2;
    return 6.0 * specfun::dilog(t) / pi2;
}

double ostbc_nacf_low(const LagContext& ctx, const AntennaConfig& antennas) {
    const double mn = antennas.product();
    return (mn + ctx.t()) / (mn + 1.0);
}

double ostbc_coeff_low(const LagContext& ctx) { return ctx.t(); }

double ostbc_coeff_high_mn(int mn, double t, const Tolerance& tol) {
    if (mn < 1) throw DomainError("ostbc_coeff_high: MN must be >= 1");
    // Centered form of R2/R0 - (R1/R0)^2: every term is nonnegative, so the
    // small difference is never formed by cancellation.
    const double shift = std::log1p(-t);
    double d = shift;  // H_{k+mn-1} - H_{mn-1} + ln(1-t) at k = 0
    auto term = [&](long long k, double w) {
        const double v = w * d * d;
        d += 1.0 / (static_cast<double>(k) + mn);
        return v;
    };
    return detail::nb_series(mn, t, term, tol, "high-SNR coefficient series") / specfun::hurwitz_zeta2(mn);
}

double ostbc_coeff_high(const AntennaConfig& antennas, const LagContext& ctx, const Tolerance& tol) {
    return ostbc_coeff_high_mn(antennas.product(), ctx.t(), tol);
}

double ostbc_nacf_high(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                       const Tolerance& tol) {
    const int mn = antennas.product();
    const double t = ctx.t();
    const double b = specfun::harmonic(mn - 1) + high_snr_log(snr, antennas);
    const double zeta = specfun::hurwitz_zeta2(mn);
    return (zeta * ostbc_coeff_high_mn(mn, t, tol) + b * b) / (b * b + zeta);
}

double ostbc_nacf_high_m2n2(const SnrPoint& snr, const LagContext& ctx) {
    const double t = ctx.t();
    const double l = std::log(snr.linear() / (2.0 * gamma_exp));
    const double den = 12.0 + pi2 + 22.0 * l + 6.0 * l * l;
    const double first = (6.0 + 22.0 * l + 6.0 * l * l + 6.0 * specfun::dilog(t)) / den;
    if (t == 0.0) return first + (85.0 / 6.0) / den;
    const double cubic = 11.0 * t * t * t - 18.0 * t * t + 9.0 * t - 2.0;
    return first + (cubic * std::log1p(-t) + 8.0 * t * t - 2.0 * t) / (den * t * t * t);
}

double ostbc_coeff_high_m2n2(const LagContext& ctx) {
    const double t = ctx.t();
    if (t == 0.0) return 0.0;
    const double d = 6.0 * pi2 - 49.0;
    const double cubic = 11.0 * t * t * t - 18.0 * t * t + 9.0 * t - 2.0;
    return 36.0 * specfun::dilog(t) / d - (85.0 * t * t - 48.0 * t + 12.0) / (d * t * t) +
           6.0 * cubic * std::log1p(-t) / (d * t * t * t);
}

double s_series(int j, double t) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("s_series: t must lie in [0, 1)");
    const double l = std::log1p(-t);
    switch (j) {
        case 0: return 1.0 / (1.0 - t);
        case 1: return -l / (1.0 - t);
        case 2: return (specfun::dilog(t) + l * l) / (1.0 - t);
        default: throw DomainError("s_series: j must be 0, 1 or 2");
    }
}

double r_series_scaled(int j, double t, int mn, const Tolerance& tol) {
    if (mn < 1) throw DomainError("r_series: mn must be >= 1");
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("r_series: t must lie in [0, 1)");
    switch (j) {
        case 0: return 1.0;
        case 1: return specfun::harmonic(mn - 1) - std::log1p(-t);
        case 2: {
            double h = specfun::harmonic(mn - 1);
            return detail::nb_series(
                mn, t,
                [&](long long k, double w) {
                    if (k > 0) h += 1.0 / static_cast<double>(k + mn - 1);
                    return w * h * h;
                },
                tol, "R2 series");
        }
        default: throw DomainError("r_series: j must be 0, 1 or 2");
    }
}

double r_series(int j, double t, int mn, const Tolerance& tol) {
    const double scaled = r_series_scaled(j, t, mn, tol);
    const double log_factor = std::lgamma(static_cast<double>(mn)) - mn * std::log1p(-t);
    if (log_factor > 709.0)
        throw RangeError("r_series: (mn-1)!/(1-t)^mn overflows (mn=" + std::to_string(mn) + ")");
    return scaled * std::exp(log_factor);
}

double r2_closed_form(double t, int mn) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("r2_closed_form: t must lie in [0, 1)");
    const double l = std::log1p(-t);
    const double li = specfun::dilog(t);
    const double u = 1.0 - t;
    switch (mn) {
        case 1: return s_series(2, t);
        case 2:
            if (t == 0.0) return 1.0;
            return (-l / t - 2.0 * l / u) / u + (li + l * l) / (u * u);
        case 4: {
            if (t == 0.0) return 121.0 / 6.0;
            const double u4 = u * u * u * u;
            const double t2 = t * t;
            return (6.0 * l * l + 6.0 * li) / u4 + 2.0 * (3.0 * t2 + 4.0 * t - 1.0) / (t2 * u4) -
                   (11.0 * t2 * t + 18.0 * t2 - 9.0 * t + 2.0) * l / (t2 * t * u4);
        }
        default: throw DomainError("r2_closed_form: available for mn = 1, 2, 4 only");
    }
}

double lemma1_sum(int p, double t) {
    if (p < 0) throw DomainError("lemma1_sum: p must be >= 0");
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("lemma1_sum: t must lie in [0, 1)");
    return (p + t) * std::exp(std::lgamma(p + 1.0) - (p + 2.0) * std::log1p(-t));
}

Table1Row table1_row(int mn) {
    if (mn < 1) throw DomainError("table1_row: mn must be >= 1");
    Tolerance tol;
    tol.max_terms = 2'000'000;
    auto coeff = [&](double t) { return ostbc_coeff_high_mn(mn, t, tol); };

    // Richardson on g(h) = coeff(h)/h = c2 + c4 h + c6 h^2 + ..., then on (g(h) - c2)/h.
    constexpr int levels = 6;
    constexpr double h0 = 0.04;
    std::array<double, levels> hs{};
    std::array<double, levels> g{};
    for (int i = 0; i < levels; ++i) {
        hs[i] = h0 / std::pow(2.0, i);
        g[i] = coeff(hs[i]) / hs[i];
    }
    auto extrapolate = [](std::array<double, levels> col) {
        for (int j = 1; j < levels; ++j) {
            const double f = std::pow(2.0, j) - 1.0;
            for (int i = levels - 1; i >= j; --i) col[i] = col[i] + (col[i] - col[i - 1]) / f;
        }
        return col[levels - 1];
    };
    const double c2 = extrapolate(g);
    std::array<double, levels> q{};
    for (int i = 0; i < levels; ++i) q[i] = (g[i] - c2) / hs[i];
    const double c4 = extrapolate(q);

    auto gap = [&](double r) { return std::abs(r * r - coeff(r * r)); };
    constexpr double r_max = 0.99;
    constexpr int grid = 990;
    double best = 0.0;
    double best_r = 0.0;
    for (int i = 0; i <= grid; ++i) {
        const double r = r_max * i / grid;
        const double d = gap(r);
        if (d > best) {
            best = d;
            best_r = r;
        }
    }
    // Golden-section refinement inside the neighbouring grid cells.
    double a = std::max(0.0, best_r - r_max / grid);
    double b = std::min(r_max, best_r + r_max / grid);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = gap(x1);
    double f2 = gap(x2);
    for (int it = 0; it < 60 && b - a > 1e-10; ++it) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = gap(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = gap(x2);
        }
    }
    if (std::max(f1, f2) > best) {
        best = std::max(f1, f2);
        best_r = f1 > f2 ? x1 : x2;
    }
    return {mn, c2, c4, best, best_r};
}

}  // namespace imistat
