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

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "imistat/error.hpp"
#include "imistat/tolerance.hpp"

namespace imistat::detail {

/// sum_k w_k f(k, w_k) with negative-binomial weights
/// w_k = C(k+mn-1, k) (1-t)^mn t^k, built in the log domain.
///
/// Every series in the library has this shape. Truncation only starts
/// counting once the terms have peaked and k is two standard deviations past
/// the weights' mean. The tail is then estimated geometrically from the ratio
/// of consecutive terms; three consecutive estimates <= rel_tol * |sum| end
/// the series. A series that
/// stays identically zero ends once the weights' own tail is negligible.
template <class F>
double nb_series(int mn, double t, F&& f, const Tolerance& tol, const char* what) {
    tol.validate();
    if (!(t >= 0.0 && t < 1.0)) throw DomainError(std::string(what) + ": t must lie in [0, 1)");
    if (t == 0.0) return f(0LL, 1.0);

    const double log_t = std::log(t);
    const double nb_mean = mn * t / (1.0 - t);
    const double nb_sd = std::sqrt(mn * t) / (1.0 - t);
    const double zero_cutoff = nb_mean + 40.0 * nb_sd + 50.0;

    double log_w = mn * std::log1p(-t);
    double sum = 0.0;
    double prev = 0.0;
    const double settle = nb_mean + 2.0 * nb_sd;
    bool past_peak = false;
    int small = 0;
    for (long long k = 0; k < tol.max_terms; ++k) {
        const double w = std::exp(log_w);
        const double term = f(k, w);
        sum += term;
        if (term < prev && prev > 0.0 && static_cast<double>(k) > settle) past_peak = true;
        const double ratio = prev > 0.0 ? term / prev : 1.0;
        const double tail = ratio < 1.0 ? term * ratio / (1.0 - ratio) : term;
        if (past_peak && tail <= tol.rel_tol * std::abs(sum)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
        if (sum == 0.0 && static_cast<double>(k) > zero_cutoff) return 0.0;
        prev = term;
        log_w += log_t + std::log((k + static_cast<double>(mn)) / (k + 1.0));
    }
    throw AccuracyError(std::string(what) + ": series did not converge within " + std::to_string(tol.max_terms) +
                            " terms (t = " + std::to_string(t) + ")",
                        sum, tol.max_terms);
}

/// As nb_series, for terms that may underflow: logf(k, log_w) returns the log
/// of the k-th term (or -inf) and the log of the sum is returned. Summation
/// starts at k0; terms below it must be negligible.
template <class F>
double nb_series_log(int mn, double t, F&& logf, const Tolerance& tol, const char* what, long long k0 = 0) {
    tol.validate();
    if (!(t >= 0.0 && t < 1.0)) throw DomainError(std::string(what) + ": t must lie in [0, 1)");
    if (t == 0.0) return logf(0LL, 0.0);

    constexpr double ninf = -std::numeric_limits<double>::infinity();
    const double log_t = std::log(t);
    const double settle = mn * t / (1.0 - t) + 2.0 * std::sqrt(mn * t) / (1.0 - t);
    const double log_rel = std::log(tol.rel_tol);

    const double k0d = static_cast<double>(k0);
    double log_w = std::lgamma(k0d + mn) - std::lgamma(k0d + 1.0) - std::lgamma(static_cast<double>(mn)) +
                   mn * std::log1p(-t) + k0d * log_t;
    double log_sum = ninf;
    double prev = ninf;
    bool past_peak = false;
    int small = 0;
    for (long long k = k0; k < k0 + tol.max_terms; ++k) {
        const double term = logf(k, log_w);
        if (term > ninf) {
            const double hi = std::max(log_sum, term);
            log_sum = hi + std::log(std::exp(log_sum - hi) + std::exp(term - hi));
        }
        if (term < prev && static_cast<double>(k) > settle) past_peak = true;
        if (past_peak) {
            const double log_ratio = term - prev;
            const double tail = log_ratio < 0.0 ? term + log_ratio - std::log(-std::expm1(log_ratio)) : term;
            if (tail <= log_sum + log_rel) {
                if (++small >= 3) return log_sum;
            } else {
                small = 0;
            }
        }
        prev = term;
        log_w += log_t + std::log((k + static_cast<double>(mn)) / (k + 1.0));
    }
    throw AccuracyError(std::string(what) + ": series did not converge within " + std::to_string(tol.max_terms) +
                            " terms (t = " + std::to_string(t) + ")",
                        std::exp(log_sum), tol.max_terms);
}

}  // namespace imistat::detail
