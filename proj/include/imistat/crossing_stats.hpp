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

#include <vector>

#include "imistat/tolerance.hpp"
#include "imistat/types.hpp"

namespace imistat {

/// Ascending, finite, nonnegative IMI thresholds (bits/s/Hz) on a symbol grid.
struct ThresholdGrid {
    std::vector<double> thresholds;
    double ts_s = 0.0;

    void validate() const;
};

struct CrossingReport {
    double threshold;
    double phi;     ///< P(I >= threshold)
    double varphi;  ///< P(I_l >= threshold, I_{l-1} >= threshold)
    double cdf;
    double lcr;     ///< down-crossings per second
    double aod;     ///< seconds; +inf when aod_infinite
    bool aod_infinite;
};

/// Normalized threshold M(2^I - 1)/eta.
double threshold_gain(double threshold, const SnrPoint& snr, const AntennaConfig& antennas);

double phi(double threshold, const SnrPoint& snr, const AntennaConfig& antennas);
double cdf(double threshold, const SnrPoint& snr, const AntennaConfig& antennas);

/// Probability that two consecutive IMI samples both lie at or above the threshold.
double varphi(double threshold, const SnrPoint& snr, const AntennaConfig& antennas, double varrho1,
              const Tolerance& tol = {});

double lcr(double threshold, const SnrPoint& snr, const AntennaConfig& antennas, double varrho1, double ts_s,
           const Tolerance& tol = {});

double aod(double threshold, const SnrPoint& snr, const AntennaConfig& antennas, double varrho1, double ts_s,
           const Tolerance& tol = {});

CrossingReport crossing_report(double threshold, const SnrPoint& snr, const AntennaConfig& antennas,
                               double varrho1, double ts_s, const Tolerance& tol = {});

}  // namespace imistat
