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

#include "imistat/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "imistat/error.hpp"
#include "imistat/imi_analytics.hpp"
#include "imistat/kernels.hpp"

namespace imistat {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();
constexpr int below_batches = 32;
constexpr int min_segments = 8;

struct LagStats {
    std::vector<double> acf;
    std::vector<double> nacf;
    std::vector<double> coeff;
    bool degenerate = false;
};

void check_sequence(std::span<const double> imi, const std::vector<int>& lags) {
    if (imi.size() < 2) throw ConfigError("empirical statistics need L >= 2");
    for (int lag : lags)
        if (lag < 0 || static_cast<std::size_t>(lag) + 2 > imi.size())
            throw ConfigError("empirical statistics need L >= max(lags) + 2");
}

LagStats lag_stats(std::span<const double> imi, const std::vector<int>& lags) {
    check_sequence(imi, lags);
    const double n = static_cast<double>(imi.size());
    std::vector<int> with_zero = lags;
    with_zero.push_back(0);

    const auto raw = kernels::omp::lagged_sums(imi, with_zero);
    const double mean = std::accumulate(imi.begin(), imi.end(), 0.0) / n;
    std::vector<double> centered(imi.begin(), imi.end());
    for (auto& v : centered) v -= mean;
    const auto cen = kernels::omp::lagged_sums(centered, with_zero);

    LagStats out;
    const double m2 = raw.back() / n;
    const double var = cen.back() / n;
    const double floor = 1e-12 * std::max(1.0, std::abs(mean));
    out.degenerate = !(var > floor * floor);
    for (std::size_t i = 0; i < lags.size(); ++i) {
        const double count = n - lags[i];
        const double acf = raw[i] / count;
        out.acf.push_back(acf);
        out.nacf.push_back(m2 > 0.0 ? acf / m2 : nan);
        out.coeff.push_back(out.degenerate ? nan : (cen[i] / count) / var);
    }
    return out;
}

double mean_of(const std::vector<double>& v) {
    if (v.empty()) return nan;
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stderr_of(const std::vector<double>& v) {
    if (v.size() < 2) return nan;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

std::vector<double> below_fractions(std::span<const double> imi, double threshold, int batches) {
    std::vector<double> fracs;
    const std::size_t n = imi.size();
    const auto nb = static_cast<std::size_t>(std::max(1, batches));
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t lo = b * n / nb;
        const std::size_t hi = (b + 1) * n / nb;
        if (hi <= lo) continue;
        const auto part = imi.subspan(lo, hi - lo);
        const auto below = std::count_if(part.begin(), part.end(), [&](double v) { return v < threshold; });
        fracs.push_back(static_cast<double>(below) / static_cast<double>(hi - lo));
    }
    return fracs;
}

CrossingEstimate finish_crossing(double threshold, const kernels::CrossingCounts& c, std::uint64_t samples,
                                 double transition_time, double ts_s, const std::vector<double>& fracs) {
    CrossingEstimate e;
    e.threshold = threshold;
    e.down_count = c.down;
    e.total_count = c.down + c.up;
    e.below_count = c.below;
    e.samples = samples;
    e.transition_time_s = transition_time;
    e.down_rate = static_cast<double>(c.down) / transition_time;
    e.total_rate = static_cast<double>(e.total_count) / transition_time;
    e.time_below_frac = static_cast<double>(c.below) / static_cast<double>(samples);
    e.below_stderr = stderr_of(fracs);
    e.aod_hat = static_cast<double>(c.below) * ts_s / static_cast<double>(std::max<std::uint64_t>(1, c.down));
    e.reliable = c.down >= min_reliable_crossings;
    return e;
}

// Running state of one SNR across realizations.
struct SnrAccumulator {
    std::vector<std::vector<double>> acf, nacf, coeff;
    std::vector<std::vector<double>> nacf_seg, coeff_seg;  // [lag][segment]
    bool degenerate = false;
    std::vector<kernels::CrossingCounts> counts;
    std::vector<std::vector<double>> fracs;  // [threshold][batch]
    std::uint64_t samples = 0;
    double transition_time = 0.0;

    SnrAccumulator(std::size_t nlags, std::size_t nthr)
        : nacf_seg(nlags), coeff_seg(nlags), counts(nthr), fracs(nthr) {}

    void add(std::span<const double> imi, const EmpiricalConfig& cfg, int segments) {
        auto st = lag_stats(imi, cfg.lags);
        degenerate = degenerate || st.degenerate;
        acf.push_back(std::move(st.acf));
        nacf.push_back(std::move(st.nacf));
        coeff.push_back(std::move(st.coeff));

        const std::size_t seg_len = imi.size() / static_cast<std::size_t>(segments);
        const int max_lag = cfg.lags.empty() ? 0 : *std::max_element(cfg.lags.begin(), cfg.lags.end());
        if (segments > 1 && seg_len >= static_cast<std::size_t>(max_lag) + 2) {
            for (int g = 0; g < segments; ++g) {
                const auto seg = lag_stats(imi.subspan(g * seg_len, seg_len), cfg.lags);
                for (std::size_t i = 0; i < cfg.lags.size(); ++i) {
                    nacf_seg[i].push_back(seg.nacf[i]);
                    coeff_seg[i].push_back(seg.coeff[i]);
                }
            }
        } else if (segments == 1) {
            for (std::size_t i = 0; i < cfg.lags.size(); ++i) {
                nacf_seg[i].push_back(nacf.back()[i]);
                coeff_seg[i].push_back(coeff.back()[i]);
            }
        }

        const auto& thr = cfg.thresholds.thresholds;
        const auto c = kernels::omp::crossing_counts(imi, thr);
        for (std::size_t k = 0; k < thr.size(); ++k) {
            counts[k].below += c[k].below;
            counts[k].down += c[k].down;
            counts[k].up += c[k].up;
            auto f = below_fractions(imi, thr[k], below_batches);
            fracs[k].insert(fracs[k].end(), f.begin(), f.end());
        }
        samples += imi.size();
        transition_time += static_cast<double>(imi.size() - 1) * cfg.thresholds.ts_s;
    }

    EmpiricalRun finish(const SnrPoint& snr, const EmpiricalConfig& cfg) const {
        EmpiricalRun run{snr, {}, {}, {}, {}, {}, degenerate, {}};
        run.acf.kind = StatKind::acf;
        run.nacf.kind = StatKind::nacf;
        run.coeff.kind = StatKind::coeff;
        for (auto* s : {&run.acf, &run.nacf, &run.coeff}) s->lags = cfg.lags;
        for (std::size_t i = 0; i < cfg.lags.size(); ++i) {
            std::vector<double> a, n, c;
            for (std::size_t r = 0; r < acf.size(); ++r) {
                a.push_back(acf[r][i]);
                n.push_back(nacf[r][i]);
                c.push_back(coeff[r][i]);
            }
            run.acf.values.push_back(mean_of(a));
            run.nacf.values.push_back(mean_of(n));
            run.coeff.values.push_back(mean_of(c));
            run.nacf_stderr.push_back(stderr_of(nacf_seg[i]));
            run.coeff_stderr.push_back(stderr_of(coeff_seg[i]));
        }
        const auto& thr = cfg.thresholds.thresholds;
        for (std::size_t k = 0; k < thr.size(); ++k)
            run.crossings.push_back(
                finish_crossing(thr[k], counts[k], samples, transition_time, cfg.thresholds.ts_s, fracs[k]));
        return run;
    }
};

int segments_per_realization(int realizations) {
    return std::max(1, (min_segments + realizations - 1) / realizations);
}

std::vector<double> realization_imi(const std::vector<FadingTrace>& traces, const SnrPoint& snr,
                                    const AntennaConfig& antennas) {
    return empirical_imi(traces, snr, antennas);
}

double relative(double err, double ref) {
    if (ref != 0.0) return err / std::abs(ref);
    return err == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace

void EmpiricalConfig::validate() const {
    if (num_samples < 2) throw ConfigError("sim: num_samples must be >= 2");
    if (num_realizations < 1) throw ConfigError("sim: realizations must be >= 1");
    if (oversample < 1) throw ConfigError("sim: oversample must be >= 1");
    for (int lag : lags) {
        if (lag < 0) throw ConfigError("sim: lags must be >= 0");
        if (static_cast<std::size_t>(lag) + 2 > num_samples)
            throw ConfigError("sim: num_samples must be >= max(lags) + 2");
    }
    thresholds.validate();
}

void ErrorBudget::validate() const {
    if (!(rel > 0.0) || !(abs > 0.0) || !(sigma > 0.0) || !(min_expected_events >= 0.0))
        throw ConfigError("budget: rel, abs and sigma must be positive");
}

std::vector<double> empirical_imi(const std::vector<FadingTrace>& traces, const SnrPoint& snr,
                                  const AntennaConfig& antennas) {
    if (traces.size() != static_cast<std::size_t>(antennas.product()))
        throw ConfigError("empirical_imi: expected M*N = " + std::to_string(antennas.product()) + " traces, got " +
                          std::to_string(traces.size()));
    const std::size_t len = traces.front().samples.size();
    std::vector<const std::complex<double>*> ptrs;
    for (const auto& t : traces) {
        if (t.samples.size() != len) throw ConfigError("empirical_imi: traces differ in length");
        ptrs.push_back(t.samples.data());
    }
    return kernels::omp::imi_sequence(ptrs, len, snr.linear() / antennas.m);
}

StatSeries empirical_acf(std::span<const double> imi, const std::vector<int>& lags) {
    auto st = lag_stats(imi, lags);
    return {lags, std::move(st.acf), StatKind::acf, Regime::exact};
}

EmpiricalCoeff empirical_coeff(std::span<const double> imi, const std::vector<int>& lags) {
    auto st = lag_stats(imi, lags);
    return {{lags, std::move(st.coeff), StatKind::coeff, Regime::exact}, st.degenerate};
}

double batch_stderr_below(std::span<const double> imi, double threshold, int batches) {
    return stderr_of(below_fractions(imi, threshold, batches));
}

CrossingEstimate empirical_crossings(std::span<const double> imi, double threshold, double ts_s) {
    if (imi.size() < 2) throw ConfigError("empirical_crossings: need L >= 2");
    if (!(ts_s > 0.0)) throw ConfigError("empirical_crossings: Ts must be > 0");
    const double thr[] = {threshold};
    const auto c = kernels::serial::crossing_counts(imi, thr);
    return finish_crossing(threshold, c[0], imi.size(), static_cast<double>(imi.size() - 1) * ts_s, ts_s,
                           below_fractions(imi, threshold, below_batches));
}

std::vector<EmpiricalRun> evaluate_traces(const std::vector<std::vector<FadingTrace>>& realizations,
                                          const std::vector<SnrPoint>& snrs, const AntennaConfig& antennas,
                                          const EmpiricalConfig& cfg) {
    if (realizations.empty()) throw ConfigError("evaluate_traces: no realizations");
    const int segments = segments_per_realization(static_cast<int>(realizations.size()));
    std::vector<SnrAccumulator> acc(snrs.size(), SnrAccumulator(cfg.lags.size(), cfg.thresholds.thresholds.size()));
    for (const auto& traces : realizations)
        for (std::size_t s = 0; s < snrs.size(); ++s)
            acc[s].add(realization_imi(traces, snrs[s], antennas), cfg, segments);
    std::vector<EmpiricalRun> out;
    for (std::size_t s = 0; s < snrs.size(); ++s) out.push_back(acc[s].finish(snrs[s], cfg));
    return out;
}

std::vector<EmpiricalRun> simulate_run(const ScatteringScenario& s, const DopplerGrid& grid,
                                       const std::vector<SnrPoint>& snrs, const AntennaConfig& antennas,
                                       const EmpiricalConfig& cfg) {
    cfg.validate();
    SimConfig sim{cfg.num_samples, cfg.seed, cfg.oversample};
    sim.validate();
    if (cfg.num_samples > max_fft_length / static_cast<std::size_t>(cfg.oversample))
        throw ResourceError("sim: oversample * L exceeds the FFT length limit");
    const SpectralShaper shaper(s, grid, cfg.num_samples * static_cast<std::size_t>(cfg.oversample));

    const int segments = segments_per_realization(cfg.num_realizations);
    std::vector<SnrAccumulator> acc(snrs.size(), SnrAccumulator(cfg.lags.size(), cfg.thresholds.thresholds.size()));
    for (int r = 0; r < cfg.num_realizations; ++r) {
        std::vector<FadingTrace> traces;
        for (int sub = 0; sub < antennas.product(); ++sub)
            traces.push_back(shaper.synthesize(cfg.num_samples, cfg.seed, static_cast<std::uint64_t>(sub),
                                               static_cast<std::uint64_t>(r)));
        for (std::size_t k = 0; k < snrs.size(); ++k)
            acc[k].add(realization_imi(traces, snrs[k], antennas), cfg, segments);
    }
    std::vector<EmpiricalRun> out;
    for (std::size_t k = 0; k < snrs.size(); ++k) out.push_back(acc[k].finish(snrs[k], cfg));
    return out;
}

ComparisonTable compare_runs(const std::vector<EmpiricalRun>& runs, const ScatteringScenario& s,
                             const DopplerGrid& grid, const AntennaConfig& antennas, const EmpiricalConfig& cfg,
                             const ErrorBudget& budget, const Tolerance& tol) {
    budget.validate();
    std::vector<double> varrhos;
    for (int lag : cfg.lags) varrhos.push_back(varrho(s, grid.fm_hz, grid.ts_s, lag));
    const double varrho1 = varrho(s, grid.fm_hz, grid.ts_s, 1);

    ComparisonTable table;
    auto push = [&](ComparisonRow row) {
        row.abs_err = std::abs(row.empirical - row.analytic);
        row.rel_err = relative(row.abs_err, row.analytic);
        table.rows.push_back(std::move(row));
        return &table.rows.back();
    };

    for (const auto& run : runs) {
        const double db = run.snr.db();
        const auto moments = imi_moments(run.snr, antennas, tol);
        const auto exact = kernels::omp::exact_stats_grid(moments, run.snr, antennas, varrhos, tol);
        for (std::size_t i = 0; i < cfg.lags.size(); ++i) {
            for (const bool is_coeff : {true, false}) {
                ComparisonRow row;
                row.quantity = is_coeff ? "coeff" : "nacf";
                row.snr_db = db;
                row.index = cfg.lags[i];
                row.analytic = is_coeff ? exact[i].coeff : exact[i].nacf;
                row.empirical = is_coeff ? run.coeff.values[i] : run.nacf.values[i];
                const double se = is_coeff ? run.coeff_stderr[i] : run.nacf_stderr[i];
                row.reliable = !run.degenerate && std::isfinite(se) && budget.sigma * se <= budget.abs;
                row.gated = row.reliable;
                auto* added = push(row);
                added->pass = added->abs_err <= budget.abs;
            }
        }

        const auto reports = kernels::omp::crossing_sweep(cfg.thresholds.thresholds, run.snr, antennas, varrho1,
                                                          grid.ts_s, tol);
        for (std::size_t k = 0; k < reports.size(); ++k) {
            const auto& rep = reports[k];
            const auto& emp = run.crossings[k];
            const double events = rep.lcr * emp.transition_time_s;

            ComparisonRow c;
            c.quantity = "cdf";
            c.snr_db = db;
            c.index = rep.threshold;
            c.analytic = rep.cdf;
            c.empirical = emp.time_below_frac;
            c.expected_events = events;
            c.reliable = emp.samples > 0;
            c.gated = c.reliable;
            // The batch estimate accounts for autocorrelation; the i.i.d. binomial value floors it.
            const double p = rep.cdf;
            const double iid = std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(emp.samples));
            const double se = std::isfinite(emp.below_stderr) ? std::max(emp.below_stderr, iid) : iid;
            auto* cdf_row = push(c);
            cdf_row->pass = cdf_row->abs_err <= budget.sigma * se;

            ComparisonRow l;
            l.quantity = "lcr";
            l.snr_db = db;
            l.index = rep.threshold;
            l.analytic = rep.lcr;
            l.empirical = emp.down_rate;
            l.expected_events = events;
            l.reliable = events > budget.min_expected_events;
            l.gated = l.reliable;
            auto* lcr_row = push(l);
            lcr_row->pass = lcr_row->rel_err <= budget.rel;

            ComparisonRow a;
            a.quantity = "aod";
            a.snr_db = db;
            a.index = rep.threshold;
            a.analytic = rep.aod;
            a.empirical = emp.aod_hat;
            a.expected_events = events;
            a.reliable = emp.reliable && !rep.aod_infinite;
            a.gated = false;
            push(a);
        }
    }

    for (const auto& row : table.rows)
        if (row.gated && !row.pass) table.gate_passed = false;
    return table;
}

ComparisonTable compare_run(const ScatteringScenario& s, const DopplerGrid& grid, const std::vector<SnrPoint>& snrs,
                            const AntennaConfig& antennas, const EmpiricalConfig& cfg, const ErrorBudget& budget,
                            const Tolerance& tol) {
    const auto runs = simulate_run(s, grid, snrs, antennas, cfg);
    return compare_runs(runs, s, grid, antennas, cfg, budget, tol);
}

}  // namespace imistat
