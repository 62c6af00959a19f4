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

#include "imistat/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "imistat/error.hpp"
#include "imistat/quadrature.hpp"

namespace imistat::specfun {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

void require_finite(double x, const char* who) {
    if (!std::isfinite(x)) throw DomainError(std::string(who) + ": non-finite argument");
}

// The integrand of (1/pi) int_0^pi exp(z cos t) dt is even and 2*pi-periodic, so the
// trapezoid rule converges geometrically; the aliasing error is ~I_{2n}(|z|).
cplx i0_trapezoid(cplx z, double shift) {
    const double r = std::abs(z);
    const int n = 16 + static_cast<int>(std::ceil(0.75 * r));
    cplx sum = 0.5 * (std::exp(z - shift) + std::exp(-z - shift));
    for (int j = 1; j < n; ++j) sum += std::exp(z * std::cos(pi * j / n) - shift);
    return sum / static_cast<double>(n);
}

// Bernoulli-series coefficients c_n = B_n/(n+1)! for Li2(x) = sum_n c_n u^{n+1}, u = -ln(1-x).
// Odd n > 1 vanish; even ones follow from B_2n = (-1)^{n+1} 2 (2n)! zeta(2n)/(2 pi)^{2n}.
struct DilogBernoulli {
    static constexpr int count = 40;
    std::array<double, count> c{};  // c[j] multiplies u^{2j+1}, j >= 1
    DilogBernoulli() {
        for (int j = 1; j < count; ++j) {
            const int two_n = 2 * j;
            double zeta = 0.0;
            if (j == 1) {
                zeta = pi2_over_6;
            } else {
                constexpr double cut = 64.0;
                for (int k = 63; k >= 1; --k) zeta += std::pow(static_cast<double>(k), -two_n);
                zeta += std::pow(cut, 1.0 - two_n) / (two_n - 1.0) + 0.5 * std::pow(cut, -two_n) +
                        two_n * std::pow(cut, -two_n - 1.0) / 12.0;
            }
            const double sign = (j % 2 == 1) ? 1.0 : -1.0;
            c[j] = sign * 2.0 * zeta / ((two_n + 1.0) * std::pow(2.0 * pi, two_n));
        }
    }
};

double dilog_direct(double x) {
    double sum = 0.0;
    double xk = x;
    for (int k = 1; k < 2000; ++k) {
        const double term = xk / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-17 * sum) break;
        xk *= x;
    }
    return sum;
}

double dilog_bernoulli(double x) {
    static const DilogBernoulli table;
    const double u = -std::log1p(-x);
    const double u2 = u * u;
    double sum = u - 0.25 * u2;
    double upow = u;
    for (int j = 1; j < DilogBernoulli::count; ++j) {
        upow *= u2;
        const double term = table.c[j] * upow;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return sum;
}

// E_{u ~ Gamma(k+1, 1)}[g(u)] for a slowly varying g.
template <class G>
double gamma_expectation(long long k, G&& g, double magnitude, const Tolerance& tol) {
    tol.validate();
    const double kk = static_cast<double>(k);
    const double log_norm = std::lgamma(kk + 1.0);
    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double w = std::exp(kk * std::log(u) - u - log_norm);
        return w == 0.0 ? 0.0 : w * g(u);
    };
    Tolerance local = tol;
    local.abs_tol = tol.abs_tol * std::min(1.0, std::max(magnitude, 1e-300));

    const double spread = 14.0 * std::sqrt(kk + 1.0);
    const double lo = std::max(0.0, kk - spread);
    const double hi = kk + spread + 14.0;
    double total = 0.0;
    if (lo > 0.0) total += quad::integrate(integrand, 0.0, lo, local).value;
    if (kk > lo) total += quad::integrate(integrand, lo, kk, local).value;
    total += quad::integrate(integrand, std::max(kk, lo), hi, local).value;
    const double tail_rate = 1.0 - kk / hi;
    total += quad::integrate_to_infinity(integrand, hi, 1.0 / tail_rate, local).value;
    return total;
}

}  // namespace

cplx bessel_i0_complex(cplx z) {
    require_finite(z.real(), "bessel_i0_complex");
    require_finite(z.imag(), "bessel_i0_complex");
    return i0_trapezoid(z, 0.0);
}

cplx bessel_i0_complex_scaled(cplx z, double shift) {
    require_finite(z.real(), "bessel_i0_complex_scaled");
    require_finite(z.imag(), "bessel_i0_complex_scaled");
    return i0_trapezoid(z, shift);
}

double bessel_i0_scaled(double x) {
    require_finite(x, "bessel_i0_scaled");
    const double ax = std::abs(x);
    return i0_trapezoid(cplx(ax, 0.0), ax).real();
}

double bessel_j0(double x) {
    require_finite(x, "bessel_j0");
    return i0_trapezoid(cplx(0.0, x), 0.0).real();
}

double log_factorial(long long n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    return std::lgamma(static_cast<double>(n) + 1.0);
}

double poisson_pmf(long long n, double z) {
    if (n < 0 || z < 0.0 || std::isnan(z)) throw DomainError("poisson_pmf: invalid argument");
    if (z == 0.0) return n == 0 ? 1.0 : 0.0;
    if (std::isinf(z)) return 0.0;
    const double nn = static_cast<double>(n);
    return std::exp(nn * std::log(z) - z - std::lgamma(nn + 1.0));
}

double gamma_q_int(long long a, double z) {
    if (a < 1) throw DomainError("gamma_q_int: a must be >= 1");
    if (z < 0.0 || std::isnan(z)) throw DomainError("gamma_q_int: z must be >= 0");
    if (z == 0.0) return 1.0;
    if (std::isinf(z)) return 0.0;
    const double ad = static_cast<double>(a);
    if (z > ad) {
        // Q = sum_{j<a} p_j with p_j increasing in j: walk down from j = a-1.
        double p = poisson_pmf(a - 1, z);
        if (p == 0.0) return 0.0;
        double sum = 0.0;
        for (long long j = a - 1; j >= 0; --j) {
            sum += p;
            if (p < 1e-17 * sum) break;
            p *= static_cast<double>(j) / z;
        }
        return sum;
    }
    return 1.0 - gamma_p_int(a, z);
}

double gamma_p_int(long long a, double z) {
    if (a < 1) throw DomainError("gamma_p_int: a must be >= 1");
    if (z < 0.0 || std::isnan(z)) throw DomainError("gamma_p_int: z must be >= 0");
    if (z == 0.0) return 0.0;
    if (std::isinf(z)) return 1.0;
    if (z > static_cast<double>(a)) return 1.0 - gamma_q_int(a, z);
    // P = sum_{j>=a} p_j with p_j decreasing for j >= a > z: walk up.
    double p = poisson_pmf(a, z);
    double sum = 0.0;
    for (long long j = a; j < a + 100000; ++j) {
        sum += p;
        if (p < 1e-17 * sum || p == 0.0) break;
        p *= z / static_cast<double>(j + 1);
    }
    return sum;
}

double upper_inc_gamma_int(int a, double z) {
    if (std::isnan(z) || z < 0.0) throw DomainError("upper_inc_gamma_int: z must be >= 0");
    if (a < 0) throw DomainError("upper_inc_gamma_int: a must be >= 0");
    if (a == 0) {
        if (z == 0.0) throw DomainError("upper_inc_gamma_int: Gamma(0, 0) diverges");
        return exp_int_gamma0(z);
    }
    const double log_fact = std::lgamma(static_cast<double>(a));
    if (log_fact > 709.0) throw RangeError("upper_inc_gamma_int: (a-1)! overflows");
    return std::exp(log_fact) * gamma_q_int(a, z);
}

double lower_inc_gamma_int(int a, double z) {
    if (std::isnan(z) || z < 0.0) throw DomainError("lower_inc_gamma_int: z must be >= 0");
    if (a < 1) throw DomainError("lower_inc_gamma_int: a must be >= 1");
    const double log_fact = std::lgamma(static_cast<double>(a));
    if (log_fact > 709.0) throw RangeError("lower_inc_gamma_int: (a-1)! overflows");
    return std::exp(log_fact) * gamma_p_int(a, z);
}

double exp_int_gamma0_scaled(double z) {
    if (std::isnan(z) || z <= 0.0) throw DomainError("exp_int_gamma0: z must be > 0");
    if (std::isinf(z)) return 0.0;
    if (z <= 1.0) {
        double sum = 0.0;
        double term = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -z / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return std::exp(z) * (-euler_mascheroni - std::log(z) - sum);
    }
    // Modified Lentz evaluation of the continued fraction for e^z E1(z).
    constexpr double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) return h;
    }
    throw AccuracyError("exp_int_gamma0: continued fraction did not converge", h, 10000);
}

double exp_int_gamma0(double z) {
    const double scaled = exp_int_gamma0_scaled(z);
    return scaled * std::exp(-z);
}

double dilog(double x) {
    if (std::isnan(x) || x < 0.0 || x > 1.0) throw DomainError("dilog: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return pi2_over_6;
    if (x <= 0.5) return dilog_direct(x);
    if (x <= 0.9) return dilog_bernoulli(x);
    const double y = 1.0 - x;
    return pi2_over_6 - std::log(x) * std::log1p(-x) - dilog_direct(y);
}

double harmonic(long long k) {
    if (k < 0) throw DomainError("harmonic: k must be >= 0");
    if (k <= 100000) {
        double sum = 0.0;
        for (long long j = k; j >= 1; --j) sum += 1.0 / static_cast<double>(j);
        return sum;
    }
    const double n = static_cast<double>(k);
    const double n2 = n * n;
    return std::log(n) + euler_mascheroni + 0.5 / n - 1.0 / (12.0 * n2) + 1.0 / (120.0 * n2 * n2);
}

double hurwitz_zeta2(long long q) {
    if (q < 1) throw DomainError("hurwitz_zeta2: q must be >= 1");
    // Twenty explicit terms, then Euler-Maclaurin from s = q + 20.
    double sum = 0.0;
    const double qd = static_cast<double>(q);
    for (int k = 19; k >= 0; --k) sum += 1.0 / ((qd + k) * (qd + k));
    const double s = qd + 20.0;
    const double inv = 1.0 / s;
    const double inv2 = inv * inv;
    // Bernoulli terms B_{2j} / s^{2j+1}, j = 1..6.
    const double bern = inv2 * inv *
                        (1.0 / 6.0 + inv2 * (-1.0 / 30.0 + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0 +
                                                                                        inv2 * (5.0 / 66.0 + inv2 * (-691.0 / 2730.0))))));
    const double tail = inv + 0.5 * inv2 + bern;
    return sum + tail;
}

double xi_normalized(long long k, double eta, double lam, const Tolerance& tol) {
    if (k < 0) throw DomainError("xi: k must be >= 0");
    if (!(eta > 0.0) || !(lam > 0.0) || !std::isfinite(eta) || !std::isfinite(lam))
        throw DomainError("xi: eta and lambda must be positive and finite");
    const double a = eta / lam;
    const double magnitude = std::log1p(a * (static_cast<double>(k) + 1.0));
    return gamma_expectation(k, [a](double u) { return std::log1p(a * u); }, magnitude, tol);
}

double xi_exact(int k, double eta, double lam, const Tolerance& tol) {
    const double normalized = xi_normalized(k, eta, lam, tol);
    const double log_prefactor = std::lgamma(k + 1.0) - (k + 1.0) * std::log(lam);
    if (log_prefactor > 709.0 || log_prefactor < -745.0)
        throw RangeError("xi_exact: k!/lam^(k+1) is not representable (k=" + std::to_string(k) +
                         ", lam=" + std::to_string(lam) + ")");
    return normalized * std::exp(log_prefactor);
}

double log_moment2_weighted(int m, double eta_over_m, const Tolerance& tol) {
    if (m < 1) throw DomainError("log_moment2_weighted: m must be >= 1");
    if (!(eta_over_m > 0.0) || !std::isfinite(eta_over_m))
        throw DomainError("log_moment2_weighted: eta/M must be positive and finite");
    const double a = eta_over_m;
    const double l = std::log1p(a * m);
    return gamma_expectation(
        m - 1,
        [a](double u) {
            const double v = std::log1p(a * u);
            return v * v;
        },
        l * l, tol);
}

}  // namespace imistat::specfun
