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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "imistat/channel_model.hpp"
#include "imistat/crossing_stats.hpp"
#include "imistat/fading_sim.hpp"
#include "imistat/tolerance.hpp"
#include "imistat/types.hpp"

namespace imistat {

struct EmpiricalConfig {
    std::size_t num_samples = 0;
    int num_realizations = 1;
    std::uint64_t seed = 0;
    std::vector<int> lags;
    ThresholdGrid thresholds;
    int oversample = 8;

    void validate() const;
};

/// Elementwise log2(1 + (eta/M) sum_s |h_s(l)|^2) over M*N equally long traces.
std::vector<double> empirical_imi(const std::vector<FadingTrace>& traces, const SnrPoint& snr,
                                  const AntennaConfig& antennas);

/// Sample ACF (1/(L-i)) sum_{l>=i} I_l I_{l-i}.
StatSeries empirical_acf(std::span<const double> imi, const std::vector<int>& lags);

/// Sample correlation coefficient from the sample mean and variance. A
/// constant sequence has no coefficient: values are NaN and `degenerate` is set.
struct EmpiricalCoeff {
    StatSeries series;
    bool degenerate = false;
};

EmpiricalCoeff empirical_coeff(std::span<const double> imi, const std::vector<int>& lags);

struct CrossingEstimate {
    double threshold = 0.0;
    double down_rate = 0.0;        ///< 1 -> 0 transitions per second
    double total_rate = 0.0;       ///< D/((L-1) Ts), both directions
    double time_below_frac = 0.0;
    double below_stderr = 0.0;     ///< batch-means standard error of time_below_frac
    double aod_hat = 0.0;          ///< seconds below per down-crossing
    std::uint64_t down_count = 0;
    std::uint64_t total_count = 0;
    std::uint64_t below_count = 0;
    std::uint64_t samples = 0;
    double transition_time_s = 0.0;  ///< sum over sequences of (L - 1) Ts
    bool reliable = false;         ///< at least 10 down-crossings
};

inline constexpr std::uint64_t min_reliable_crossings = 10;

/// Counts on X_l = 1{I_l >= threshold}; the first sample only seeds the
/// transition sums.
CrossingEstimate empirical_crossings(std::span<const double> imi, double threshold, double ts_s);

/// Standard error of the below-threshold fraction from `batches` contiguous batches.
double batch_stderr_below(std::span<const double> imi, double threshold, int batches = 32);

struct EmpiricalRun {
    SnrPoint snr;
    StatSeries acf;
    StatSeries nacf;
    StatSeries coeff;
    std::vector<double> coeff_stderr;  ///< from per-segment estimates (>= 8 segments)
    std::vector<double> nacf_stderr;
    bool degenerate = false;
    std::vector<CrossingEstimate> crossings;
};

/// Evaluates already generated traces: one vector of M*N traces per realization.
std::vector<EmpiricalRun> evaluate_traces(const std::vector<std::vector<FadingTrace>>& realizations,
                                          const std::vector<SnrPoint>& snrs, const AntennaConfig& antennas,
                                          const EmpiricalConfig& cfg);

/// Generates num_realizations sets of M*N traces and evaluates every SNR on
/// the same traces. Deterministic in cfg.seed.
std::vector<EmpiricalRun> simulate_run(const ScatteringScenario& s, const DopplerGrid& grid,
                                       const std::vector<SnrPoint>& snrs, const AntennaConfig& antennas,
                                       const EmpiricalConfig& cfg);

/// Budget of the comparison gate. lcr rows use rel, coefficient rows abs,
/// cdf rows sigma batch standard errors.
struct ErrorBudget {
    double rel = 0.05;
    double abs = 0.03;
    double sigma = 3.0;
    double min_expected_events = 100.0;

    void validate() const;
};

struct ComparisonRow {
    std::string quantity;  ///< coeff, nacf, cdf, lcr, aod
    double snr_db = 0.0;
    double index = 0.0;    ///< lag or threshold
    double analytic = 0.0;
    double empirical = 0.0;
    double abs_err = 0.0;
    double rel_err = 0.0;
    double expected_events = 0.0;
    bool reliable = false;
    bool gated = false;
    bool pass = true;
};

struct ComparisonTable {
    std::vector<ComparisonRow> rows;
    bool gate_passed = true;
};

ComparisonTable compare_run(const ScatteringScenario& s, const DopplerGrid& grid, const std::vector<SnrPoint>& snrs,
                            const AntennaConfig& antennas, const EmpiricalConfig& cfg, const ErrorBudget& budget = {},
                            const Tolerance& tol = {});

/// Same comparison on externally supplied runs (e.g. replayed traces).
ComparisonTable compare_runs(const std::vector<EmpiricalRun>& runs, const ScatteringScenario& s,
                             const DopplerGrid& grid, const AntennaConfig& antennas, const EmpiricalConfig& cfg,
                             const ErrorBudget& budget = {}, const Tolerance& tol = {});

}  // namespace imistat
