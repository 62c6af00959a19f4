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
#include <vector>

namespace imistat {

/// One von Mises scatterer cluster of the angle-of-arrival mixture.
struct Cluster {
    double weight;         ///< P_n in (0, 1]
    double kappa;          ///< concentration, >= 0 (0 is isotropic)
    double mean_aoa_rad;   ///< theta_n, normalized into [0, 2*pi)
};

/// Mixture of von Mises clusters whose weights sum to one.
class ScatteringScenario {
public:
    /// Validates each cluster and the unit total weight (|sum - 1| <= 1e-12).
    explicit ScatteringScenario(std::vector<Cluster> clusters);

    /// Uniform angle of arrival (Clarke's model).
    static ScatteringScenario isotropic();

    [[nodiscard]] const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
    [[nodiscard]] bool is_isotropic() const noexcept;

private:
    std::vector<Cluster> clusters_;
};

/// Maximum Doppler, symbol period and lag indices of a sampled fading process.
struct DopplerGrid {
    double fm_hz;
    double ts_s;
    std::vector<int> lags;

    void validate() const;
};

/// Clamp applied to |rho_h| at nonzero lags so lambda = 1/(1 - varrho^2) stays finite.
inline constexpr double varrho_eps = 1e-9;

/// Angle-of-arrival density (per radian).
double aoa_pdf(const ScatteringScenario& s, double theta_rad);

/// rho_h(tau) = E[h(t) h*(t - tau)] for the von Mises mixture.
std::complex<double> channel_corr(const ScatteringScenario& s, double fm_hz, double tau_s);

/// Doppler power spectrum S_h(f) on the open interval |f| < fm (1/Hz).
double doppler_spectrum(const ScatteringScenario& s, double fm_hz, double f_hz);

/// S_h(fm sin u) * fm cos u: the spectrum in the edge-regularizing variable
/// f = fm sin(u), u in [-pi/2, pi/2]. Smooth and bounded, integrates to 1.
double doppler_density_sine_map(const ScatteringScenario& s, double u);

/// varrho_i = |rho_h(i Ts)|; exactly 1 at i = 0 and at most 1 - varrho_eps elsewhere.
double varrho(const ScatteringScenario& s, double fm_hz, double ts_s, int lag);

}  // namespace imistat
