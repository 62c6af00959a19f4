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

#include <gsl/gsl_sf_bessel.h>

#include <cmath>
#include <numbers>
#include <random>

#include "imistat/channel_model.hpp"
#include "imistat/error.hpp"
#include "oracles.hpp"

using namespace imistat;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

double integrate_pdf(const ScatteringScenario& s) {
    const int n = 4096;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += aoa_pdf(s, 2.0 * pi * i / n);
    return sum * 2.0 * pi / n;
}

}  // namespace

TEST_CASE("scenario validation", "[channel_model]") {
    CHECK_THROWS_AS(ScatteringScenario({}), ConfigError);
    CHECK_THROWS_AS(ScatteringScenario({{0.5, 1.0, 0.0}}), ConfigError);
    CHECK_THROWS_AS(ScatteringScenario({{1.0, -1.0, 0.0}}), ConfigError);
    CHECK_THROWS_AS(ScatteringScenario({{0.0, 1.0, 0.0}, {1.0, 1.0, 0.0}}), ConfigError);
    const ScatteringScenario s({{1.0, 1.0, -pi / 2.0}});
    CHECK_THAT(s.clusters()[0].mean_aoa_rad, WithinAbs(1.5 * pi, 1e-15));
    CHECK(ScatteringScenario::isotropic().is_isotropic());
}

TEST_CASE("aoa_pdf", "[channel_model]") {
    const auto iso = ScatteringScenario::isotropic();
    for (double th = 0.0; th < 2.0 * pi; th += 0.3) CHECK_THAT(aoa_pdf(iso, th), WithinRel(1.0 / (2.0 * pi), 1e-15));
    const ScatteringScenario one({{1.0, 2.0, 0.0}});
    CHECK_THAT(aoa_pdf(one, 0.0), WithinAbs(std::exp(2.0) / (2.0 * pi * gsl_sf_bessel_I0(2.0)), 1e-12));
    CHECK_THAT(aoa_pdf(one, 0.0), WithinAbs(0.515885412, 1e-9));
    CHECK_THAT(integrate_pdf(oracle::three_cluster()), WithinAbs(1.0, 1e-12));
}

TEST_CASE("channel_corr", "[channel_model]") {
    const auto iso = ScatteringScenario::isotropic();
    for (double tau = 0.0; tau < 0.2; tau += 0.013) {
        const auto r = channel_corr(iso, 10.0, tau);
        CHECK_THAT(r.real(), WithinAbs(gsl_sf_bessel_J0(2.0 * pi * 10.0 * tau), 1e-12));
        CHECK_THAT(r.imag(), WithinAbs(0.0, 1e-12));
    }
    const auto s = oracle::three_cluster();
    CHECK(channel_corr(s, 10.0, 0.0) == std::complex<double>(1.0, 0.0));
    const auto r = channel_corr(s, 10.0, 1.0 / 200.0);
    CHECK(std::abs(r - oracle::aoa_fourier(s, 10.0, 1.0 / 200.0)) < 1e-8);
}

TEST_CASE("channel_corr equals the AoA Fourier oracle on a lag grid", "[channel_model]") {
    const auto s = oracle::three_cluster();
    for (int i = 0; i <= 200; i += 7) {
        const double tau = i / 200.0;
        CHECK(std::abs(channel_corr(s, 10.0, tau) - oracle::aoa_fourier(s, 10.0, tau)) < 1e-8);
    }
}

TEST_CASE("doppler_spectrum", "[channel_model]") {
    const auto iso = ScatteringScenario::isotropic();
    // Unit-power normalization: the isotropic spectrum is 1/(pi sqrt(fm^2 - f^2)).
    CHECK_THAT(doppler_spectrum(iso, 10.0, 0.0), WithinRel(1.0 / (10.0 * pi), 1e-14));
    CHECK_THAT(doppler_spectrum(iso, 10.0, 6.0), WithinRel(1.0 / (pi * 8.0), 1e-14));
    CHECK_THROWS_AS(doppler_spectrum(iso, 10.0, 10.0), DomainError);
    CHECK_THROWS_AS(doppler_spectrum(iso, 10.0, -12.0), DomainError);
    const auto s = oracle::three_cluster();
    oracle::Workspace ws;
    const double total = oracle::qag(
        [&](double u) { return doppler_spectrum(s, 10.0, 10.0 * std::sin(u)) * 10.0 * std::cos(u); }, -pi / 2.0,
        pi / 2.0, 1e-12, ws);
    CHECK_THAT(total, WithinAbs(1.0, 1e-6));
}

TEST_CASE("varrho", "[channel_model]") {
    const auto iso = ScatteringScenario::isotropic();
    CHECK(varrho(iso, 10.0, 0.005, 0) == 1.0);
    CHECK_THAT(varrho(iso, 10.0, 0.005, 1), WithinAbs(std::abs(gsl_sf_bessel_J0(0.1 * pi)), 1e-12));
    const double root = 2.404825557695773;
    const double ts = root / (2.0 * pi * 10.0 * 3.0);
    CHECK(varrho(iso, 10.0, ts, 3) < 1e-6);
    const auto s = oracle::three_cluster();
    CHECK_THAT(varrho(s, 10.0, 0.005, 1), WithinAbs(std::abs(oracle::aoa_fourier(s, 10.0, 0.005)), 1e-8));
    const ScatteringScenario tight({{1.0, 0.0, 0.0}});
    CHECK(varrho(tight, 1e-12, 1e-3, 1) <= 1.0 - varrho_eps);
    CHECK_THROWS_AS(varrho(iso, 10.0, 0.005, -1), DomainError);
}

TEST_CASE("randomized scenarios: density normalized, correlation bounded", "[channel_model]") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 25; ++trial) {
        const int k = 1 + trial % 4;
        std::vector<Cluster> cs;
        double total = 0.0;
        for (int i = 0; i < k; ++i) {
            cs.push_back({0.1 + u01(rng), 30.0 * u01(rng), 2.0 * pi * u01(rng)});
            total += cs.back().weight;
        }
        for (auto& c : cs) c.weight /= total;
        double sum = 0.0;
        for (const auto& c : cs) sum += c.weight;
        cs.back().weight += 1.0 - sum;
        const ScatteringScenario s(cs);
        CHECK_THAT(integrate_pdf(s), WithinAbs(1.0, 1e-10));
        for (double th = 0.0; th < 2.0 * pi; th += 0.1) CHECK(aoa_pdf(s, th) >= 0.0);
        for (double tau = 0.0; tau < 0.3; tau += 0.011) {
            const auto r = channel_corr(s, 10.0, tau);
            CHECK(std::abs(r) <= 1.0 + 1e-9);
            CHECK(std::abs(r - oracle::aoa_fourier(s, 10.0, tau)) < 1e-8);
        }
    }
}
