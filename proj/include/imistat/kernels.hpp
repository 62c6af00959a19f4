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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "imistat/channel_model.hpp"
#include "imistat/crossing_stats.hpp"
#include "imistat/imi_analytics.hpp"
#include "imistat/tolerance.hpp"
#include "imistat/types.hpp"

namespace imistat::kernels {

/// Transition counts of X_l = 1{I_l >= threshold} over one sequence.
struct CrossingCounts {
    std::uint64_t below = 0;  ///< #{l : X_l = 0}
    std::uint64_t down = 0;   ///< #{l >= 1 : X_{l-1} = 1, X_l = 0}
    std::uint64_t up = 0;     ///< #{l >= 1 : X_{l-1} = 0, X_l = 1}
};

/// Block length of the lagged-product reduction. Fixed so that serial and
/// parallel runs add the same partial sums in the same order.
inline constexpr std::size_t reduction_block = 8192;

// Every kernel exists twice with identical results: `serial` is the
// reference and `omp` distributes the outer loop over OpenMP threads.
// Without OpenMP the `omp` variants run serially.

namespace serial {

/// Doppler power in each FFT bin [j df - df/2, j df + df/2], integrated in
/// the sine-mapped variable.
std::vector<double> spectral_bin_masses(const ScatteringScenario& s, double fm_hz, double df_hz,
                                        std::span<const long long> bins);

/// I_l = log2(1 + a * sum_s |h_s(l)|^2) over equally long subchannel traces.
std::vector<double> imi_sequence(std::span<const std::complex<double>* const> gains, std::size_t length, double a);

/// sum_{l=i}^{L-1} x_l x_{l-i} for each lag i, pairwise-reduced over fixed blocks.
std::vector<double> lagged_sums(std::span<const double> x, std::span<const int> lags);

std::vector<CrossingCounts> crossing_counts(std::span<const double> x, std::span<const double> thresholds);

std::vector<ExactStats> exact_stats_grid(const ImiMoments& moments, const SnrPoint& snr,
                                         const AntennaConfig& antennas, std::span<const double> varrhos,
                                         const Tolerance& tol);

std::vector<CrossingReport> crossing_sweep(std::span<const double> thresholds, const SnrPoint& snr,
                                           const AntennaConfig& antennas, double varrho1, double ts_s,
                                           const Tolerance& tol);

}  // namespace serial

namespace omp {

std::vector<double> spectral_bin_masses(const ScatteringScenario& s, double fm_hz, double df_hz,
                                        std::span<const long long> bins);
std::vector<double> imi_sequence(std::span<const std::complex<double>* const> gains, std::size_t length, double a);
std::vector<double> lagged_sums(std::span<const double> x, std::span<const int> lags);
std::vector<CrossingCounts> crossing_counts(std::span<const double> x, std::span<const double> thresholds);
std::vector<ExactStats> exact_stats_grid(const ImiMoments& moments, const SnrPoint& snr,
                                         const AntennaConfig& antennas, std::span<const double> varrhos,
                                         const Tolerance& tol);
std::vector<CrossingReport> crossing_sweep(std::span<const double> thresholds, const SnrPoint& snr,
                                           const AntennaConfig& antennas, double varrho1, double ts_s,
                                           const Tolerance& tol);

}  // namespace omp

/// Threads the omp kernels will use (1 without OpenMP).
int max_threads();
/// Caps the omp kernels at n >= 1 threads.
void set_max_threads(int n);

}  // namespace imistat::kernels
