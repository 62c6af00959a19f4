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

#include <gsl/gsl_sf_bessel.h>
#include <gsl/gsl_sf_dilog.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "imistat/channel_model.hpp"
#include "imistat/crossing_stats.hpp"
#include "imistat/fading_sim.hpp"
#include "imistat/imi_analytics.hpp"
#include "imistat/monte_carlo.hpp"
#include "imistat/specfun.hpp"
#include "oracles.hpp"

using namespace imistat;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double fm = 10.0;
constexpr double ts = 1.0 / 200.0;

struct Verdict {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

// Taylor-coefficient table against published values.
Verdict criterion1() {
    struct Row {
        int mn;
        double c2, c4, diff;
    };
    const Row published[] = {{1, 0.608, 0.152, 0.16},  {2, 0.775, 0.129, 0.075}, {3, 0.844, 0.106, 0.048},
                         {4, 0.881, 0.088, 0.035}, {5, 0.904, 0.075, 0.027}, {16, 0.969, 0.029, 0.008},
                         {64, 0.992, 0.008, 0.002}};
    double coeff_err = 0.0;
    double diff_err = 0.0;
    for (const auto& p : published) {
        const auto r = table1_row(p.mn);
        coeff_err = std::max({coeff_err, std::abs(r.c2 - p.c2), std::abs(r.c4 - p.c4)});
        diff_err = std::max(diff_err, std::abs(r.max_diff - p.diff));
    }
    return {coeff_err <= 0.002 && diff_err <= 0.003,
            fmt("max |coeff err| = %.4g (<= 0.002), max |max_diff err| = %.4g (<= 0.003)", coeff_err, diff_err)};
}

// Outage duration at 10 dB and 6 bps/Hz, analytic and simulated.
Verdict criterion2() {
    const auto iso = ScatteringScenario::isotropic();
    const auto snr = SnrPoint::from_db(10.0);
    const double v1 = varrho(iso, fm, ts, 1);
    const double analytic = aod(6.0, snr, {1, 1}, v1, ts);

    EmpiricalConfig cfg;
    cfg.num_samples = std::size_t{1} << 22;
    cfg.seed = 2;
    cfg.lags = {0, 1};
    cfg.thresholds = {{6.0}, ts};
    cfg.oversample = 2;
    const auto runs = simulate_run(iso, {fm, ts, cfg.lags}, {snr}, {1, 1}, cfg);
    const auto& c = runs[0].crossings[0];
    const double rel = std::abs(c.aod_hat - analytic) / analytic;
    const bool in_band = analytic >= 6.0 && analytic <= 8.0;
    const bool sim_ok = rel <= 0.15;
    return {in_band && sim_ok,
            fmt("analytic AOD = %.4f s (%s [6, 8]); simulated AOD = %.4f s over %llu outages, rel err %.3f (%s 0.15)",
                analytic, in_band ? "in" : "NOT in", c.aod_hat, static_cast<unsigned long long>(c.down_count), rel,
                sim_ok ? "<=" : ">")};
}

// Regime approximations against the exact series.
Verdict criterion3() {
    const auto lo = SnrPoint::from_db(-10.0);
    const auto hi = SnrPoint::from_db(30.0);
    const auto mlo = imi_moments(lo, {1, 1});
    const auto mhi = imi_moments(hi, {1, 1});
    double err_lo = 0.0;
    double err_hi = 0.0;
    for (int i = 0; i <= 99; ++i) {
        const double r = 0.01 * i;
        err_lo = std::max(err_lo, std::abs(exact_stats(mlo, lo, {1, 1}, r).coeff - r * r));
        err_hi = std::max(err_hi,
                          std::abs(exact_stats(mhi, hi, {1, 1}, r).coeff - 6.0 * gsl_sf_dilog(r * r) / (pi * pi)));
    }
    return {err_lo < 0.02 && err_hi < 0.02,
            fmt("max |exact - varrho^2| at -10 dB = %.4g, max |exact - 6Li2/pi^2| at 30 dB = %.4g (< 0.02)", err_lo,
                err_hi)};
}

// Exact ACF series against 2-D quadrature over the joint density.
Verdict criterion4() {
    const AntennaConfig configs[] = {{1, 1}, {1, 2}, {2, 2}};
    double worst = 0.0;
    int points = 0;
    for (const auto& ant : configs)
        for (double eta : {0.1, 1.0, 10.0, 100.0})
            for (double r : {0.1, 0.5, 0.9}) {
                const auto snr = SnrPoint::from_linear(eta);
                const double series = ostbc_acf_exact(snr, ant, LagContext(r));
                const double ref = oracle::acf_joint(ant.product(), eta / ant.m, r);
                worst = std::max(worst, std::abs(series - ref) / ref);
                ++points;
            }
    return {worst <= 1e-6 && points == 36, fmt("%d points, max relative difference %.3g (<= 1e-6)", points, worst)};
}

// Threshold at which the analytic CDF equals q.
double cdf_quantile(double q, const SnrPoint& snr, const AntennaConfig& ant) {
    double a = 0.0;
    double b = 1.0;
    while (cdf(b, snr, ant) < q) b *= 2.0;
    for (int i = 0; i < 100; ++i) {
        const double m = 0.5 * (a + b);
        (cdf(m, snr, ant) < q ? a : b) = m;
    }
    return 0.5 * (a + b);
}

// Crossing rate and time below threshold against simulation.
Verdict criterion5() {
    const double quantiles[] = {0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.8, 0.9, 0.95, 0.98};
    struct Case {
        const char* name;
        ScatteringScenario s;
    };
    const Case scenarios[] = {{"isotropic", ScatteringScenario::isotropic()}, {"three-cluster", oracle::three_cluster()}};
    int lcr_rows = 0;
    int lcr_fail = 0;
    int cdf_rows = 0;
    int cdf_fail = 0;
    double worst_rel = 0.0;
    double worst_sigma = 0.0;
    std::uint64_t seed = 50;
    for (const auto& sc : scenarios)
        for (const auto ant : {AntennaConfig(1, 1), AntennaConfig(2, 2)}) {
            EmpiricalConfig cfg;
            cfg.num_samples = std::size_t{1} << 22;
            cfg.seed = seed++;
            cfg.lags = {0, 1};
            cfg.oversample = 2;
            cfg.thresholds = {{}, ts};
            const DopplerGrid grid{fm, ts, cfg.lags};
            const auto traces = generate_mimo_traces(sc.s, grid, {cfg.num_samples, cfg.seed, cfg.oversample}, ant);
            for (double d : {0.0, 5.0, 10.0}) {
                const auto snr = SnrPoint::from_db(d);
                cfg.thresholds.thresholds.clear();
                for (double q : quantiles) cfg.thresholds.thresholds.push_back(cdf_quantile(q, snr, ant));
                const auto runs = evaluate_traces({traces}, {snr}, ant, cfg);
                const auto table = compare_runs(runs, sc.s, grid, ant, cfg);
                for (const auto& row : table.rows) {
                    if (row.quantity == "lcr" && row.expected_events > 100.0) {
                        ++lcr_rows;
                        worst_rel = std::max(worst_rel, row.rel_err);
                        if (row.rel_err > 0.05) {
                            ++lcr_fail;
                            std::printf("  lcr miss: %s %dx%d %.0f dB I_th=%.4f rel=%.4f events=%.0f\n", sc.name, ant.m,
                                        ant.n, d, row.index, row.rel_err, row.expected_events);
                        }
                    } else if (row.quantity == "cdf") {
                        ++cdf_rows;
                        const auto& c = runs[0].crossings[static_cast<std::size_t>(
                            std::find(cfg.thresholds.thresholds.begin(), cfg.thresholds.thresholds.end(), row.index) -
                            cfg.thresholds.thresholds.begin())];
                        const double p = row.analytic;
                        const double iid = std::sqrt(p * (1.0 - p) / static_cast<double>(c.samples));
                        const double se = std::max(c.below_stderr, iid);
                        worst_sigma = std::max(worst_sigma, row.abs_err / se);
                        if (!row.pass) {
                            ++cdf_fail;
                            std::printf("  cdf miss: %s %dx%d %.0f dB I_th=%.4f err=%.3g se=%.3g\n", sc.name, ant.m,
                                        ant.n, d, row.index, row.abs_err, se);
                        }
                    }
                }
            }
        }
    return {lcr_fail == 0 && cdf_fail == 0,
            fmt("lcr: %d/%d rows within 5%% (worst %.4f); cdf: %d/%d rows within 3 stderr (worst %.2f stderr)",
                lcr_rows - lcr_fail, lcr_rows, worst_rel, cdf_rows - cdf_fail, cdf_rows, worst_sigma)};
}

// Identity suite over randomized inputs.
Verdict criterion6() {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto pick = [&](int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); };
    int failures = 0;
    int checks = 0;
    auto expect = [&](bool ok) {
        ++checks;
        if (!ok) ++failures;
    };
    for (int i = 0; i < 500; ++i) {
        const int a = pick(1, 20);
        const double z = 50.0 * u(rng);
        const double f = std::tgamma(static_cast<double>(a));
        expect(std::abs(specfun::upper_inc_gamma_int(a, z) + specfun::lower_inc_gamma_int(a, z) - f) <= 1e-12 * f);

        const double x = 1e-6 + (1.0 - 2e-6) * u(rng);
        expect(std::abs(specfun::dilog(x) + specfun::dilog(1.0 - x) -
                        (specfun::pi2_over_6 - std::log(x) * std::log1p(-x))) <= 1e-9);

        const int p = pick(0, 10);
        const double t = 0.9 * u(rng);
        long double brute = 0.0L;
        long double ratio = std::tgamma(p + 1.0);
        long double tk = 1.0L;
        for (int k = 0; k < 4000; ++k) {
            brute += ratio * (k + p) * tk;
            ratio *= static_cast<long double>(k + 1 + p) / (k + 1);
            tk *= t;
        }
        const double l1 = lemma1_sum(p, t);
        expect(std::abs(l1 - static_cast<double>(brute)) <= 1e-10 * std::max(l1, 1e-300));

        const auto snr = SnrPoint::from_db(-10.0 + 40.0 * u(rng));
        const double th = 8.0 * u(rng);
        const double r = 0.99 * u(rng);
        const AntennaConfig ant(pick(1, 3), pick(1, 3));
        const auto rep = crossing_report(th, snr, ant, r, ts);
        if (!rep.aod_infinite) expect(std::abs(rep.aod * rep.lcr - rep.cdf) <= 1e-12);
        const auto one = crossing_report(th, snr, {1, 1}, r, ts);
        const double z0 = (std::exp2(th) - 1.0) / snr.linear();
        expect(std::abs(one.phi - std::exp(-z0)) <= 1e-12);
        expect(std::abs(one.cdf - (-std::expm1(-z0))) <= 1e-12);
    }
    Tolerance tight;
    tight.rel_tol = 1e-14;
    tight.max_terms = 1'000'000;
    for (int i = 0; i < 100; ++i) {
        const int mn = pick(1, 6);
        const int j = pick(0, 2);
        const double t = 0.95 * u(rng);
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
        expect(std::abs(v - static_cast<double>(sum)) <= 1e-8 * v);
        if (j == 2 && (mn == 1 || mn == 2 || mn == 4) && t > 0.02)
            expect(std::abs(r2_closed_form(t, mn) - v) <= 1e-8 * v);

        const auto snr = SnrPoint::from_db(-20.0 + 60.0 * u(rng));
        const LagContext c(0.95 * u(rng));
        const double a = siso_acf_exact(snr, c);
        expect(std::abs(ostbc_acf_exact(snr, {1, 1}, c) - a) <= 1e-12 * a);
        expect(std::abs(ostbc_coeff_high({1, 1}, c, tight) - siso_coeff_high(c)) <= 1e-12);
    }
    return {failures == 0, fmt("%d/%d identity checks hold", checks - failures, checks)};
}

// Kolmogorov distribution tail P(K > lambda).
double ks_pvalue(double d, double n) {
    const double s = std::sqrt(n);
    const double lam = (s + 0.12 + 0.11 / s) * d;
    double sum = 0.0;
    for (int k = 1; k <= 100; ++k) sum += 2.0 * ((k % 2) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lam * lam);
    return std::clamp(sum, 0.0, 1.0);
}

// Simulator calibration on a Clarke trace.
Verdict criterion7() {
    const auto iso = ScatteringScenario::isotropic();
    const auto tr = generate_trace(iso, {fm, ts, {1}}, {std::size_t{1} << 20, 7, 8});
    const auto& x = tr.samples;
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
        std::complex<double> s{0.0, 0.0};
        for (std::size_t l = static_cast<std::size_t>(i); l < x.size(); ++l) s += x[l] * std::conj(x[l - i]);
        s /= static_cast<double>(x.size() - i);
        worst = std::max(worst, std::abs(s - gsl_sf_bessel_J0(2.0 * pi * fm * i * ts)));
    }
    const std::size_t stride = 50;
    std::vector<double> env;
    for (std::size_t l = 0; l < x.size(); l += stride) env.push_back(std::abs(x[l]));
    std::sort(env.begin(), env.end());
    const double n = static_cast<double>(env.size());
    double d = 0.0;
    for (std::size_t i = 0; i < env.size(); ++i) {
        const double f = 1.0 - std::exp(-env[i] * env[i]);
        d = std::max({d, f - i / n, (i + 1) / n - f});
    }
    const double p = ks_pvalue(d, n);
    return {worst < 0.02 && p > 0.01,
            fmt("max |rho_hat - J0| over lags 0..40 = %.4g (< 0.02); envelope KS D = %.4g, n = %.0f, p = %.3f (> 0.01)",
                worst, d, n, p)};
}

}  // namespace

int main(int argc, char** argv) {
    const std::function<Verdict()> criteria[] = {criterion1, criterion2, criterion3, criterion4,
                                                  criterion5, criterion6, criterion7};
    const char* names[] = {"Taylor table", "outage duration", "regime approximations", "quadrature oracle",
                           "crossings vs simulation", "identity suite", "simulator calibration"};
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::fprintf(stderr, "usage: acceptance [--criterion N]\n");
            return 2;
        }
    }
    if (only < 0 || only > 7) {
        std::fprintf(stderr, "criterion must be 1..7\n");
        return 2;
    }
    bool all = true;
    for (int c = 1; c <= 7; ++c) {
        if (only != 0 && c != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[c - 1]();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("C%d %s %s: %s [%.1f s]\n", c, v.pass ? "PASS" : "FAIL", names[c - 1], v.detail.c_str(), secs);
        std::fflush(stdout);
        all = all && v.pass;
    }
    return all ? 0 : 1;
}
