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
#include <numbers>

#include "imistat/tolerance.hpp"

namespace imistat::specfun {

/// exp(Euler-Mascheroni) = 1.781072..., the constant that appears inside the
/// high-SNR logarithms ln(eta/gamma_exp). Not to be confused with gamma(a, z).
inline constexpr double gamma_exp = 1.7810724179901979852;
inline constexpr double euler_mascheroni = std::numbers::egamma;
inline constexpr double log2e = std::numbers::log2e;
inline constexpr double pi2_over_6 = std::numbers::pi * std::numbers::pi / 6.0;

/// I0(z) = (1/pi) * int_0^pi exp(z cos t) dt for complex z.
std::complex<double> bessel_i0_complex(std::complex<double> z);

/// exp(-shift) * I0(z); lets callers form ratios I0(z)/I0(kappa) without overflow.
std::complex<double> bessel_i0_complex_scaled(std::complex<double> z, double shift);

/// exp(-|x|) * I0(x) for real x.
double bessel_i0_scaled(double x);

double bessel_j0(double x);

/// Gamma(a, z) for integer a >= 1 by the finite sum (a-1)! e^{-z} sum_{j<a} z^j/j!.
/// a == 0 with z > 0 is forwarded to exp_int_gamma0.
double upper_inc_gamma_int(int a, double z);

/// gamma(a, z) = (a-1)! - Gamma(a, z), evaluated without cancellation.
double lower_inc_gamma_int(int a, double z);

/// Regularized Q(a, z) = Gamma(a, z)/(a-1)!, a >= 1. Safe for any a.
double gamma_q_int(long long a, double z);

/// Regularized P(a, z) = gamma(a, z)/(a-1)!, a >= 1.
double gamma_p_int(long long a, double z);

/// Poisson mass e^{-z} z^n / n!, computed in the log domain.
double poisson_pmf(long long n, double z);

/// E1(z) = Gamma(0, z), z > 0.
double exp_int_gamma0(double z);

/// e^z * Gamma(0, z); finite for arbitrarily large z.
double exp_int_gamma0_scaled(double z);

/// Li2(x) for 0 <= x <= 1.
double dilog(double x);

double harmonic(long long k);

/// zeta(2, q) = sum_{k>=0} 1/(q+k)^2 for integer q >= 1.
double hurwitz_zeta2(long long q);

/// int_0^inf x^k e^{-lam x} ln(1 + eta x) dx.
double xi_exact(int k, double eta, double lam, const Tolerance& tol = {});

/// lam^{k+1}/k! * xi_exact(k, eta, lam): the mean of ln(1 + eta x) under a
/// Gamma(k+1, rate lam) law. Stays O(ln eta) for every k, so series
/// kernels use this form.
double xi_normalized(long long k, double eta, double lam, const Tolerance& tol = {});

/// int_0^inf y^{m-1} e^{-y}/(m-1)! ln^2(1 + a y) dy, m >= 1, a = eta/M.
double log_moment2_weighted(int m, double eta_over_m, const Tolerance& tol = {});

/// ln(n!) for n >= 0.
double log_factorial(long long n);

}  // namespace imistat::specfun
