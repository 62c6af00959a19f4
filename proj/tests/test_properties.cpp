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

#include <catch_amalgamated.hpp>

#include <gsl/gsl_sf_dilog.h>

#include <cmath>
#include <random>

#include "imistat/crossing_stats.hpp"
#include "imistat/imi_analytics.hpp"
#include "imistat/specfun.hpp"
#include "oracles.hpp"

using namespace imistat;

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
    double log_uniform(double a, double b) { return std::exp(uniform(std::log(a), std::log(b))); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng_); }

private:
    std::mt19937_64 rng_;
};

constexpr int trials = 200;

}  // namespace

TEST_CASE("incomplete gamma halves sum to the factorial", "[properties]") {
    Draw d(101);
    for (int i = 0; i < trials; ++i) {
        const int a = d.integer(1, 20);
        const double z = d.uniform(0.0, 50.0);
        const double f = std::tgamma(static_cast<double>(a));
        CHECK(std::abs(specfun::upper_inc_gamma_int(a, z) + specfun::lower_inc_gamma_int(a, z) - f) <= 1e-12 * f);
    }
}

TEST_CASE("dilog reflection", "[properties]") {
    Draw d(102);
    for (int i = 0; i < trials; ++i) {
        const double x = d.uniform(1e-6, 1.0 - 1e-6);
        const double lhs = specfun::dilog(x) + specfun::dilog(1.0 - x);
        CHECK(std::abs(lhs - (specfun::pi2_over_6 - std::log(x) * std::log1p(-x))) < 1e-9);
    }
}

TEST_CASE("weighted harmonic moment sum against brute force", "[properties]") {
    Draw d(103);
    for (int i = 0; i < trials; ++i) {
        const int p = d.integer(0, 10);
        const double t = d.uniform(0.0, 0.9);
        long double brute = 0.0L;
        long double ratio = std::tgamma(p + 1.0);
        long double tk = 1.0L;
        for (int k = 0; k < 4000; ++k) {
            brute += ratio * (k + p) * tk;
            ratio *= static_cast<long double>(k + 1 + p) / (k + 1);
            tk *= t;
        }
        const double v = lemma1_sum(p, t);
        CHECK(std::abs(v - static_cast<double>(brute)) <= 1e-10 * std::abs(v) + 1e-300);
    }
}

TEST_CASE("R series closed forms against partial sums", "[properties]") {
    Draw d(104);
    Tolerance tight;
    tight.rel_tol = 1e-14;
    tight.max_terms = 1'000'000;
    for (int i = 0; i < trials; ++i) {
        const int mn = d.integer(1, 6);
        const int j = d.integer(0, 2);
        const double t = d.uniform(0.0, 0.95);
        long double sum = 0.0L;
        long double ratio = std::tgamma(static_cast<double>(mn));
        long double h = specfun::harmonic(mn - 1);
        long double tk = 1.0L;
        for (int k = 0; k < 20000; ++k) {
            sum += ratio * std::pow(h, j) * tk;
            ratio *= static_cast<long double>(k + mn) / (k + 1);
            h += 1.0L / (k + mn);
            tk *= t;
        }
        const double v = r_series(j, t, mn, tight);
        CHECK(std::abs(v - static_cast<double>(sum)) <= 1e-8 * std::abs(v));
        if (j == 2 && (mn == 1 || mn == 2 || mn == 4) && t > 0.02)
            CHECK(std::abs(r2_closed_form(t, mn) - v) <= 1e-8 * v);
    }
}

TEST_CASE("xi against trapezoid at random points", "[properties]") {
    Draw d(105);
    for (int i = 0; i < 40; ++i) {
        const int k = d.integer(0, 30);
        const double eta = d.log_uniform(1e-3, 1e4);
        const double lam = d.log_uniform(1.0, 1e4);
        const double ref = oracle::xi_trapezoid(k, eta, lam);
        CHECK(std::abs(specfun::xi_exact(k, eta, lam) - ref) <= 1e-6 * ref);
    }
}

TEST_CASE("crossing identities at random points", "[properties]") {
    Draw d(106);
    for (int i = 0; i < trials; ++i) {
        const auto snr = SnrPoint::from_db(d.uniform(-10.0, 30.0));
        const double th = d.uniform(0.0, 8.0);
        const double r = d.uniform(0.0, 0.99);
        const double ts = d.log_uniform(1e-4, 1e-1);
        const AntennaConfig ant(d.integer(1, 4), d.integer(1, 4));
        const auto rep = crossing_report(th, snr, ant, r, ts);
        CHECK(rep.cdf >= 0.0);
        CHECK(rep.cdf <= 1.0);
        CHECK(rep.lcr >= 0.0);
        CHECK(rep.phi * rep.phi <= rep.varphi * (1.0 + 1e-9) + 1e-300);
        CHECK(rep.varphi <= rep.phi * (1.0 + 1e-12) + 1e-300);
        if (!rep.aod_infinite) CHECK(std::abs(rep.aod * rep.lcr - rep.cdf) <= 1e-12);
    }
}

TEST_CASE("SISO equals OSTBC at one antenna", "[properties]") {
    Draw d(107);
    for (int i = 0; i < 60; ++i) {
        const auto snr = SnrPoint::from_db(d.uniform(-20.0, 40.0));
        const double r = d.uniform(0.0, 0.95);
        const double th = d.uniform(0.0, 6.0);
        const LagContext c(r);
        const AntennaConfig one{1, 1};
        const double a = siso_acf_exact(snr, c);
        CHECK(std::abs(ostbc_acf_exact(snr, one, c) - a) <= 1e-12 * a);
        CHECK(std::abs(ostbc_coeff_high(one, c) - siso_coeff_high(c)) <= 1e-9);
        CHECK(std::abs(ostbc_nacf_low(c, one) - siso_nacf_low(c)) <= 1e-15);
        const double l = lcr(th, snr, one, r, 0.005);
        const double expected = (phi(th, snr, one) - varphi(th, snr, one, r)) / 0.005;
        CHECK(std::abs(l - expected) <= 1e-12 * std::max(1.0, l));
        const double eta = snr.linear();
        const double z = (std::exp2(th) - 1.0) / eta;
        CHECK(std::abs(phi(th, snr, one) - std::exp(-z)) <= 1e-12);
    }
}

TEST_CASE("exact coefficient stays in range and grows with varrho", "[properties]") {
    Draw d(108);
    for (int i = 0; i < 30; ++i) {
        const auto snr = SnrPoint::from_db(d.uniform(-20.0, 40.0));
        const AntennaConfig ant(d.integer(1, 3), d.integer(1, 3));
        const auto mo = imi_moments(snr, ant);
        const double r1 = d.uniform(0.0, 0.97);
        const double r2 = std::min(0.98, r1 + d.uniform(0.001, 0.2));
        const double c1 = exact_stats(mo, snr, ant, r1).coeff;
        const double c2 = exact_stats(mo, snr, ant, r2).coeff;
        CHECK(c1 >= 0.0);
        CHECK(c2 < 1.0);
        CHECK(c2 >= c1);
        const double lo = r1 * r1;
        const double hi = 6.0 * gsl_sf_dilog(lo) / (M_PI * M_PI);
        if (ant.product() == 1) {
            CHECK(c1 <= lo + 1e-12);
            CHECK(c1 >= hi - 1e-12);
        }
    }
}
