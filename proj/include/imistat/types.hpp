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

#include <cmath>
#include <string>
#include <vector>

#include "imistat/error.hpp"

namespace imistat {

/// Average receive SNR. Stored linear; dB is converted once, at construction.
class SnrPoint {
public:
    static SnrPoint from_linear(double eta) { return SnrPoint(eta); }
    static SnrPoint from_db(double db) {
        if (!std::isfinite(db)) throw ConfigError("snr: dB value must be finite");
        return SnrPoint(std::pow(10.0, db / 10.0));
    }

    [[nodiscard]] double linear() const noexcept { return eta_; }
    [[nodiscard]] double db() const noexcept { return 10.0 * std::log10(eta_); }

private:
    explicit SnrPoint(double eta) : eta_(eta) {
        if (!(eta > 0.0) || !std::isfinite(eta)) throw ConfigError("snr: eta must be positive and finite");
    }
    double eta_;
};

/// M transmit and N receive antennas of an OSTBC link; (1, 1) is SISO.
struct AntennaConfig {
    int m = 1;
    int n = 1;

    static constexpr int max_product = 128;

    AntennaConfig() = default;
    AntennaConfig(int tx, int rx) : m(tx), n(rx) {
        if (m < 1 || n < 1) throw ConfigError("antennas: M and N must be >= 1");
        if (static_cast<long long>(m) * n > max_product)
            throw ConfigError("antennas: M*N must not exceed " + std::to_string(max_product));
    }

    [[nodiscard]] int product() const noexcept { return m * n; }
    [[nodiscard]] bool is_siso() const noexcept { return m == 1 && n == 1; }
};

/// Channel correlation magnitude at one nonzero lag, with lambda = 1/(1 - varrho^2).
class LagContext {
public:
    explicit LagContext(double varrho) : varrho_(varrho) {
        if (!(varrho >= 0.0 && varrho < 1.0)) throw DomainError("lag context: varrho must lie in [0, 1)");
        t_ = varrho * varrho;
        lambda_ = 1.0 / (1.0 - t_);
    }

    [[nodiscard]] double varrho() const noexcept { return varrho_; }
    /// varrho^2, the natural argument of every series.
    [[nodiscard]] double t() const noexcept { return t_; }
    [[nodiscard]] double lambda() const noexcept { return lambda_; }

private:
    double varrho_;
    double t_;
    double lambda_;
};

enum class StatKind { acf, nacf, coeff };
enum class Regime { exact, low_snr, high_snr, piecewise };

/// Per-lag statistic.
struct StatSeries {
    std::vector<int> lags;
    std::vector<double> values;
    StatKind kind = StatKind::coeff;
    Regime regime = Regime::exact;
};

}  // namespace imistat
