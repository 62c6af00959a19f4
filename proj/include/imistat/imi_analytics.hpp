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

#include "imistat/tolerance.hpp"
#include "imistat/types.hpp"

namespace imistat {

// ---------------------------------------------------------------------------
// Samples and moments
// ---------------------------------------------------------------------------

/// log2(1 + eta * alpha^2)
double imi_sample(double alpha_sq, const SnrPoint& snr);

/// log2(1 + (eta/M) * sum |h_rt|^2)
double imi_sample_ostbc(double gain_sum, const SnrPoint& snr, const AntennaConfig& antennas);

/// log2(e) * e^{1/eta} * Gamma(0, 1/eta)
double siso_mean(const SnrPoint& snr);
double siso_moment2(const SnrPoint& snr, const Tolerance& tol = {});

double ostbc_mean(const SnrPoint& snr, const AntennaConfig& antennas, const Tolerance& tol = {});
double ostbc_moment2(const SnrPoint& snr, const AntennaConfig& antennas, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Exact series
// ---------------------------------------------------------------------------

double siso_acf_exact(const SnrPoint& snr, const LagContext& ctx, const Tolerance& tol = {});
double siso_nacf_exact(const SnrPoint& snr, const LagContext& ctx, const Tolerance& tol = {});
double siso_coeff_exact(const SnrPoint& snr, const LagContext& ctx, const Tolerance& tol = {});

double ostbc_acf_exact(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                       const Tolerance& tol = {});
double ostbc_nacf_exact(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                        const Tolerance& tol = {});
double ostbc_coeff_exact(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                         const Tolerance& tol = {});

/// First two moments of the IMI, both by quadrature, so that the exact
/// coefficient is exactly zero at varrho = 0.
struct ImiMoments {
    double mean;
    double moment2;
};

ImiMoments imi_moments(const SnrPoint& snr, const AntennaConfig& antennas, const Tolerance& tol = {});

struct ExactStats {
    double acf;
    double nacf;
    double coeff;
};

/// All three exact statistics at one lag. varrho >= 1 is lag 0: acf = E[I^2], nacf = coeff = 1.
ExactStats exact_stats(const ImiMoments& moments, const SnrPoint& snr, const AntennaConfig& antennas,
                       double varrho, const Tolerance& tol = {});

// ---------------------------------------------------------------------------
// Low- and high-SNR approximations
// ---------------------------------------------------------------------------

/// (1 + varrho^2)/2
double siso_nacf_low(const LagContext& ctx);
/// varrho^2
double siso_coeff_low(const LagContext& ctx);

/// (Li2(varrho^2) + ln^2(eta/gamma)) / (pi^2/6 + ln^2(eta/gamma))
double siso_nacf_high(const SnrPoint& snr, const LagContext& ctx);
/// 6 Li2(varrho^2) / pi^2
double siso_coeff_high(const LagContext& ctx);

/// Three-branch approximation split at 6.5 dB and 16 dB. Discontinuous at both seams.
double siso_coeff_piecewise(const SnrPoint& snr, const LagContext& ctx);

/// (MN + varrho^2)/(MN + 1)
double ostbc_nacf_low(const LagContext& ctx, const AntennaConfig& antennas);
double ostbc_coeff_low(const LagContext& ctx);

double ostbc_nacf_high(const SnrPoint& snr, const AntennaConfig& antennas, const LagContext& ctx,
                       const Tolerance& tol = {});
double ostbc_coeff_high(const AntennaConfig& antennas, const LagContext& ctx, const Tolerance& tol = {});
/// Same as ostbc_coeff_high but keyed by MN alone.
double ostbc_coeff_high_mn(int mn, double t, const Tolerance& tol = {});

/// Closed-form 2x2 (MN = 4) high-SNR statistics. Loses digits to cancellation for varrho^2 below ~1e-3.
double ostbc_nacf_high_m2n2(const SnrPoint& snr, const LagContext& ctx);
double ostbc_coeff_high_m2n2(const LagContext& ctx);

// ---------------------------------------------------------------------------
// Series building blocks
// ---------------------------------------------------------------------------

/// S_j(t) = sum_k H_k^j t^k in closed form, j in {0, 1, 2}.
double s_series(int j, double t);

/// R_j(t) = sum_k (k+mn-1)!/k! H_{k+mn-1}^j t^k. R0, R1 closed; R2 by its defining sum.
double r_series(int j, double t, int mn, const Tolerance& tol = {});

/// (1-t)^mn R_j(t)/(mn-1)!: the same quantity without the factorial blow-up.
double r_series_scaled(int j, double t, int mn, const Tolerance& tol = {});

/// Closed-form R2 for mn in {1, 2, 4}. mn = 4 cancels badly for small t.
double r2_closed_form(double t, int mn);

/// (p + t) p! / (1 - t)^{p+2}
double lemma1_sum(int p, double t);

// ---------------------------------------------------------------------------
// Taylor table of the high-SNR OSTBC coefficient
// ---------------------------------------------------------------------------

struct Table1Row {
    int mn;
    double c2;        ///< coefficient of varrho^2
    double c4;        ///< coefficient of varrho^4
    double max_diff;  ///< max over varrho in [0, 0.99] of |varrho^2 - coeff_high|
    double argmax_varrho;
};

Table1Row table1_row(int mn);

}  // namespace imistat
