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

#include "imistat/crossing_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "imistat/error.hpp"
#include "imistat/specfun.hpp"
#include "nb_series.hpp"

namespace imistat {

namespace {

void check_threshold(double threshold) {
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw DomainError("threshold must be finite and >= 0");
}

void check_ts(double ts_s) {
    if (!(ts_s > 0.0) || !std::isfinite(ts_s)) throw DomainError("Ts must be positive and finite");
}

// log Q(a, z) for z > a, valid where Q itself underflows.
double log_gamma_q_int(long long a, double z) {
    const double q = specfun::gamma_q_int(a, z);
    if (q > 1e-280 || z <= static_cast<double>(a)) return std::log(q);
    const double ad = static_cast<double>(a - 1);
    double ratio = 1.0;
    double sum = 0.0;
    for (long long j = a - 1; j >= 0; --j) {
        sum += ratio;
        if (ratio < 1e-17 * sum) break;
        ratio *= static_cast<double>(j) / z;
    }
    return ad * std::log(z) - z - std::lgamma(ad + 1.0) + std::log(sum);
}

double log_add(double a, double b) {
    if (a < b) std::swap(a, b);
    if (b == -std::numeric_limits<double>::infinity()) return a;
    return a + std::log1p(std::exp(b - a));
}

}  // namespace

void ThresholdGrid::validate() const {
    if (!(ts_s > 0.0) || !std::isfinite(ts_s)) throw ConfigError("threshold grid: Ts must be > 0");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] >= 0.0) || !std::isfinite(thresholds[i]))
            throw ConfigError("threshold grid: thresholds must be finite and >= 0");
        if (i > 0 && thresholds[i] < thresholds[i - 1])
            throw ConfigError("threshold grid: thresholds must be sorted ascending");
    }
}

double threshold_gain(double threshold, const SnrPoint& snr, const AntennaConfig& antennas) {
    check_threshold(threshold);
    return antennas.m * std::expm1(threshold * std::numbers::ln2) / snr.linear();
}

double phi(double threshold, const SnrPoint& snr, const AntennaConfig& antennas) {
    return specfun::gamma_q_int(antennas.product(), threshold_gain(threshold, snr, antennas));
}

double cdf(double threshold, const SnrPoint& snr, const AntennaConfig& antennas) {
    return specfun::gamma_p_int(antennas.product(), threshold_gain(threshold, snr, antennas));
}

double varphi(double threshold, const SnrPoint& snr, const AntennaConfig& antennas, double varrho1,
              const Tolerance& tol) {
    if (!(varrho1 >= 0.0) || !std::isfinite(varrho1)) throw DomainError("varphi: varrho1 must lie in [0, 1]");
    const double p = phi(threshold, snr, antennas);
    if (varrho1 >= 1.0 || p == 0.0) return p;
    const int mn = antennas.product();
    const double t = varrho1 * varrho1;
    const double z = threshold_gain(threshold, snr, antennas) / (1.0 - t);
    // Q(k+mn, z) = Q(k+mn-1, z) + e^{-z} z^{k+mn-1}/(k+mn-1)!
    double q = specfun::gamma_q_int(mn, z);
    if (q < 1e-140) {
        // Terms are log-concave with their peak near k = z sqrt(t) - mn.
        const double peak = std::max(0.0, z * std::sqrt(t) - mn);
        const auto k0 = static_cast<long long>(std::max(0.0, peak - 12.0 * std::sqrt(peak + 1.0)));
        double log_q = log_gamma_q_int(k0 + mn, z);
        const double log_sum = detail::nb_series_log(
            mn, t,
            [&](long long k, double log_w) {
                if (k > k0) {
                    const double n = static_cast<double>(k + mn - 1);
                    log_q = std::min(0.0, log_add(log_q, n * std::log(z) - z - std::lgamma(n + 1.0)));
                }
                return log_w + 2.0 * log_q;
            },
            tol, "joint exceedance series", k0);
        return std::exp(log_sum);
    }
    return detail::nb_series(
        mn, t,
        [&](long long k, double w) {
            if (k > 0) q = std::min(1.0, q + specfun::poisson_pmf(k + mn - 1, z));
            return w * q * q;
        },
        tol, "joint exceedance series");
}

double lcr(double threshold, const SnrPoint& snr, const AntennaConfig& antennas, double varrho1, double ts_s,
           const Tolerance& tol) {
    check_ts(ts_s);
    const double p = phi(threshold, snr, antennas);
    const double pp = varphi(threshold, snr, antennas, varrho1, tol);
    return std::max(0.0, p - pp) / ts_s;
}

double aod(double threshold, const SnrPoint& snr, const AntennaConfig& antennas, double varrho1, double ts_s,
           const Tolerance& tol) {
    return crossing_report(threshold, snr, antennas, varrho1, ts_s, tol).aod;
}

CrossingReport crossing_report(double threshold, const SnrPoint& snr, const AntennaConfig& antennas,
                               double varrho1, double ts_s, const Tolerance& tol) {
    check_ts(ts_s);
    CrossingReport r{};
    r.threshold = threshold;
    r.phi = phi(threshold, snr, antennas);
    r.cdf = cdf(threshold, snr, antennas);
    r.varphi = varphi(threshold, snr, antennas, varrho1, tol);
    r.lcr = std::max(0.0, r.phi - r.varphi) / ts_s;
    r.aod_infinite = false;
    if (r.cdf == 0.0) {
        r.aod = 0.0;
    } else if (r.lcr == 0.0) {
        r.aod = std::numeric_limits<double>::infinity();
        r.aod_infinite = true;
    } else {
        r.aod = r.cdf / r.lcr;
        r.aod_infinite = std::isinf(r.aod);
    }
    return r;
}

}  // namespace imistat
