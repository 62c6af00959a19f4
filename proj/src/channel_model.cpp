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

#include "imistat/channel_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "imistat/error.hpp"
#include "imistat/specfun.hpp"

namespace imistat {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double wrap_angle(double theta) {
    double t = std::fmod(theta, two_pi);
    if (t < 0.0) t += two_pi;
    if (t >= two_pi) t = 0.0;
    return t;
}

}  // namespace

ScatteringScenario::ScatteringScenario(std::vector<Cluster> clusters) : clusters_(std::move(clusters)) {
    if (clusters_.empty()) throw ConfigError("scattering scenario: at least one cluster is required");
    double total = 0.0;
    for (std::size_t n = 0; n < clusters_.size(); ++n) {
        auto& c = clusters_[n];
        const std::string where = "cluster " + std::to_string(n + 1);
        if (!(c.weight > 0.0 && c.weight <= 1.0))
            throw ConfigError(where + ": weight must lie in (0, 1]");
        if (!(c.kappa >= 0.0) || !std::isfinite(c.kappa))
            throw ConfigError(where + ": kappa must be finite and >= 0");
        if (!std::isfinite(c.mean_aoa_rad)) throw ConfigError(where + ": mean angle must be finite");
        c.mean_aoa_rad = wrap_angle(c.mean_aoa_rad);
        total += c.weight;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw ConfigError("cluster weights must sum to 1 (got " + std::to_string(total) + ")");
}

ScatteringScenario ScatteringScenario::isotropic() { return ScatteringScenario({{1.0, 0.0, 0.0}}); }

bool ScatteringScenario::is_isotropic() const noexcept {
    for (const auto& c : clusters_)
        if (c.kappa != 0.0) return false;
    return true;
}

void DopplerGrid::validate() const {
    if (!(fm_hz > 0.0) || !std::isfinite(fm_hz)) throw ConfigError("doppler grid: fm must be > 0");
    if (!(ts_s > 0.0) || !std::isfinite(ts_s)) throw ConfigError("doppler grid: Ts must be > 0");
    for (int lag : lags)
        if (lag < 0) throw ConfigError("doppler grid: lags must be nonnegative");
}

double aoa_pdf(const ScatteringScenario& s, double theta_rad) {
    double p = 0.0;
    for (const auto& c : s.clusters()) {
        // e^{kappa cos(.)}/I0(kappa) = e^{kappa (cos(.) - 1)} / (e^{-kappa} I0(kappa))
        const double scaled_i0 = specfun::bessel_i0_scaled(c.kappa);
        p += c.weight * std::exp(c.kappa * (std::cos(theta_rad - c.mean_aoa_rad) - 1.0)) / (two_pi * scaled_i0);
    }
    return p;
}

std::complex<double> channel_corr(const ScatteringScenario& s, double fm_hz, double tau_s) {
    if (!std::isfinite(tau_s) || !std::isfinite(fm_hz)) throw DomainError("channel_corr: non-finite argument");
    if (tau_s == 0.0) return 1.0;
    const double b = two_pi * fm_hz * tau_s;
    std::complex<double> rho = 0.0;
    for (const auto& c : s.clusters()) {
        const std::complex<double> arg(c.kappa * c.kappa - b * b, 2.0 * c.kappa * b * std::cos(c.mean_aoa_rad));
        const auto w = std::sqrt(arg);  // principal branch; I0 is even so the branch is immaterial
        rho += c.weight * specfun::bessel_i0_complex_scaled(w, c.kappa) / specfun::bessel_i0_scaled(c.kappa);
    }
    return rho;
}

double doppler_spectrum(const ScatteringScenario& s, double fm_hz, double f_hz) {
    if (!(fm_hz > 0.0)) throw DomainError("doppler_spectrum: fm must be > 0");
    if (!(std::abs(f_hz) < fm_hz)) throw DomainError("doppler_spectrum: |f| must be < fm");
    const double x = f_hz / fm_hz;
    const double root = std::sqrt(1.0 - x * x);
    double sum = 0.0;
    for (const auto& c : s.clusters()) {
        const double a = c.kappa * x * std::cos(c.mean_aoa_rad);
        const double h = c.kappa * root * std::abs(std::sin(c.mean_aoa_rad));
        // exp(a) cosh(h) / I0(kappa), kept in range for large kappa
        const double num = 0.5 * (std::exp(a + h - c.kappa) + std::exp(a - h - c.kappa));
        sum += c.weight * num / specfun::bessel_i0_scaled(c.kappa);
    }
    return sum / (pi * fm_hz * root);
}

double doppler_density_sine_map(const ScatteringScenario& s, double u) {
    const double sn = std::sin(u);
    const double cs = std::abs(std::cos(u));
    double sum = 0.0;
    for (const auto& c : s.clusters()) {
        const double a = c.kappa * sn * std::cos(c.mean_aoa_rad);
        const double h = c.kappa * cs * std::abs(std::sin(c.mean_aoa_rad));
        const double num = 0.5 * (std::exp(a + h - c.kappa) + std::exp(a - h - c.kappa));
        sum += c.weight * num / specfun::bessel_i0_scaled(c.kappa);
    }
    return sum / pi;
}

double varrho(const ScatteringScenario& s, double fm_hz, double ts_s, int lag) {
    if (lag < 0) throw DomainError("varrho: lag must be >= 0");
    if (lag == 0) return 1.0;
    const double v = std::abs(channel_corr(s, fm_hz, lag * ts_s));
    return std::min(v, 1.0 - varrho_eps);
}

}  // namespace imistat
