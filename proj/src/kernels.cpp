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

#include "imistat/kernels.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "imistat/error.hpp"

namespace imistat::kernels {

namespace {

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> gl_nodes = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                            0.9061798459386640};
constexpr std::array<double, 5> gl_weights = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                              0.4786286704993665, 0.2369268850561891};

double bin_mass(const ScatteringScenario& s, double fm, double df, long long j) {
    const double lo = std::max(-fm, (static_cast<double>(j) - 0.5) * df);
    const double hi = std::min(fm, (static_cast<double>(j) + 0.5) * df);
    if (!(lo < hi)) return 0.0;
    const double ua = std::asin(std::clamp(lo / fm, -1.0, 1.0));
    const double ub = std::asin(std::clamp(hi / fm, -1.0, 1.0));
    const double mid = 0.5 * (ua + ub);
    const double half = 0.5 * (ub - ua);
    double sum = 0.0;
    for (std::size_t q = 0; q < gl_nodes.size(); ++q)
        sum += gl_weights[q] * doppler_density_sine_map(s, mid + half * gl_nodes[q]);
    return sum * half;
}

double imi_at(std::span<const std::complex<double>* const> gains, std::size_t l, double a) {
    double g = 0.0;
    for (const auto* h : gains) g += std::norm(h[l]);
    return std::log2(1.0 + a * g);
}

void block_lagged(std::span<const double> x, std::span<const int> lags, std::size_t b, double* out) {
    const std::size_t begin = b * reduction_block;
    const std::size_t end = std::min(x.size(), begin + reduction_block);
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const auto lag = static_cast<std::size_t>(lags[i]);
        double acc = 0.0;
        for (std::size_t l = std::max(begin, lag); l < end; ++l) acc += x[l] * x[l - lag];
        out[i] = acc;
    }
}

double pairwise(const std::vector<double>& partial, std::size_t stride, std::size_t col, std::size_t lo,
                std::size_t hi) {
    if (hi - lo == 1) return partial[lo * stride + col];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise(partial, stride, col, lo, mid) + pairwise(partial, stride, col, mid, hi);
}

std::vector<double> reduce_blocks(const std::vector<double>& partial, std::size_t blocks, std::size_t nlags) {
    std::vector<double> out(nlags, 0.0);
    if (blocks == 0) return out;
    for (std::size_t i = 0; i < nlags; ++i) out[i] = pairwise(partial, nlags, i, 0, blocks);
    return out;
}

void check_lags(std::span<const double> x, std::span<const int> lags) {
    for (int lag : lags)
        if (lag < 0 || static_cast<std::size_t>(lag) >= x.size())
            throw DomainError("lagged_sums: every lag must lie in [0, L)");
}

CrossingCounts count_one(std::span<const double> x, double threshold) {
    CrossingCounts c;
    bool prev = false;
    for (std::size_t l = 0; l < x.size(); ++l) {
        const bool above = x[l] >= threshold;
        if (!above) ++c.below;
        if (l > 0) {
            if (prev && !above) ++c.down;
            if (!prev && above) ++c.up;
        }
        prev = above;
    }
    return c;
}

// Rethrows the exception of the lowest failing index, so errors do not depend on scheduling.
void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace

namespace serial {

std::vector<double> spectral_bin_masses(const ScatteringScenario& s, double fm_hz, double df_hz,
                                        std::span<const long long> bins) {
    std::vector<double> out(bins.size());
    for (std::size_t i = 0; i < bins.size(); ++i) out[i] = bin_mass(s, fm_hz, df_hz, bins[i]);
    return out;
}

std::vector<double> imi_sequence(std::span<const std::complex<double>* const> gains, std::size_t length,
                                 double a) {
    std::vector<double> out(length);
    for (std::size_t l = 0; l < length; ++l) out[l] = imi_at(gains, l, a);
    return out;
}

std::vector<double> lagged_sums(std::span<const double> x, std::span<const int> lags) {
    check_lags(x, lags);
    const std::size_t blocks = (x.size() + reduction_block - 1) / reduction_block;
    std::vector<double> partial(blocks * lags.size());
    for (std::size_t b = 0; b < blocks; ++b) block_lagged(x, lags, b, partial.data() + b * lags.size());
    return reduce_blocks(partial, blocks, lags.size());
}

std::vector<CrossingCounts> crossing_counts(std::span<const double> x, std::span<const double> thresholds) {
    std::vector<CrossingCounts> out(thresholds.size());
    for (std::size_t k = 0; k < thresholds.size(); ++k) out[k] = count_one(x, thresholds[k]);
    return out;
}

std::vector<ExactStats> exact_stats_grid(const ImiMoments& moments, const SnrPoint& snr,
                                         const AntennaConfig& antennas, std::span<const double> varrhos,
                                         const Tolerance& tol) {
    std::vector<ExactStats> out(varrhos.size());
    for (std::size_t i = 0; i < varrhos.size(); ++i) out[i] = exact_stats(moments, snr, antennas, varrhos[i], tol);
    return out;
}

std::vector<CrossingReport> crossing_sweep(std::span<const double> thresholds, const SnrPoint& snr,
                                           const AntennaConfig& antennas, double varrho1, double ts_s,
                                           const Tolerance& tol) {
    std::vector<CrossingReport> out(thresholds.size());
    for (std::size_t k = 0; k < thresholds.size(); ++k)
        out[k] = crossing_report(thresholds[k], snr, antennas, varrho1, ts_s, tol);
    return out;
}

}  // namespace serial

namespace omp {

std::vector<double> spectral_bin_masses(const ScatteringScenario& s, double fm_hz, double df_hz,
                                        std::span<const long long> bins) {
    std::vector<double> out(bins.size());
    const auto n = static_cast<std::ptrdiff_t>(bins.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = bin_mass(s, fm_hz, df_hz, bins[i]);
    return out;
}

std::vector<double> imi_sequence(std::span<const std::complex<double>* const> gains, std::size_t length,
                                 double a) {
    std::vector<double> out(length);
    const auto n = static_cast<std::ptrdiff_t>(length);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < n; ++l) out[l] = imi_at(gains, static_cast<std::size_t>(l), a);
    return out;
}

std::vector<double> lagged_sums(std::span<const double> x, std::span<const int> lags) {
    check_lags(x, lags);
    const std::size_t blocks = (x.size() + reduction_block - 1) / reduction_block;
    std::vector<double> partial(blocks * lags.size());
    const auto nb = static_cast<std::ptrdiff_t>(blocks);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < nb; ++b)
        block_lagged(x, lags, static_cast<std::size_t>(b), partial.data() + b * lags.size());
    return reduce_blocks(partial, blocks, lags.size());
}

std::vector<CrossingCounts> crossing_counts(std::span<const double> x, std::span<const double> thresholds) {
    std::vector<CrossingCounts> out(thresholds.size());
    const auto n = static_cast<std::ptrdiff_t>(thresholds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) out[k] = count_one(x, thresholds[k]);
    return out;
}

std::vector<ExactStats> exact_stats_grid(const ImiMoments& moments, const SnrPoint& snr,
                                         const AntennaConfig& antennas, std::span<const double> varrhos,
                                         const Tolerance& tol) {
    std::vector<ExactStats> out(varrhos.size());
    std::vector<std::exception_ptr> errors(varrhos.size());
    const auto n = static_cast<std::ptrdiff_t>(varrhos.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        try {
            out[i] = exact_stats(moments, snr, antennas, varrhos[i], tol);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    rethrow_first(errors);
    return out;
}

std::vector<CrossingReport> crossing_sweep(std::span<const double> thresholds, const SnrPoint& snr,
                                           const AntennaConfig& antennas, double varrho1, double ts_s,
                                           const Tolerance& tol) {
    std::vector<CrossingReport> out(thresholds.size());
    std::vector<std::exception_ptr> errors(thresholds.size());
    const auto n = static_cast<std::ptrdiff_t>(thresholds.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t k = 0; k < n; ++k) {
        try {
            out[k] = crossing_report(thresholds[k], snr, antennas, varrho1, ts_s, tol);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    rethrow_first(errors);
    return out;
}

}  // namespace omp

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

void set_max_threads(int n) {
    if (n < 1) throw ConfigError("thread count must be >= 1");
#ifdef _OPENMP
    omp_set_num_threads(n);
#endif
}

}  // namespace imistat::kernels
