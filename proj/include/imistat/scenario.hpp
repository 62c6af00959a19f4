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
#include <string>
#include <vector>

#include "imistat/channel_model.hpp"
#include "imistat/types.hpp"

namespace imistat {

/// Parsed scenario file. Every module invariant is checked while parsing.
struct ScenarioFile {
    std::vector<Cluster> clusters;
    double fm_hz = 0.0;
    double ts_s = 0.0;
    AntennaConfig antennas{1, 1};
    std::vector<double> snr_db;
    std::vector<double> thresholds_bpshz;
    std::vector<int> lags;

    struct Sim {
        std::size_t samples = std::size_t{1} << 20;
        int realizations = 1;
        std::uint64_t seed = 0;
        int oversample = 8;
    } sim;

    [[nodiscard]] ScatteringScenario scenario() const { return ScatteringScenario(clusters); }
    [[nodiscard]] DopplerGrid grid() const { return {fm_hz, ts_s, lags}; }
    [[nodiscard]] std::vector<SnrPoint> snrs() const;
};

/// Parses `key = value` lines. `source` names the input in diagnostics,
/// which have the form "source:line:column: message". Throws ConfigError.
ScenarioFile parse_scenario(const std::string& text, const std::string& source = "<scenario>");
ScenarioFile load_scenario(const std::string& path);

/// Evaluates one numeric field: decimal literals, pi, + - * / ^ and parentheses.
double parse_number(const std::string& expr);

}  // namespace imistat
