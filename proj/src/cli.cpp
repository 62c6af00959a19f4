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

#include "imistat/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>

#include "imistat/crossing_stats.hpp"
#include "imistat/csv.hpp"
#include "imistat/error.hpp"
#include "imistat/fading_sim.hpp"
#include "imistat/imi_analytics.hpp"
#include "imistat/kernels.hpp"
#include "imistat/scenario.hpp"

namespace imistat::cli {

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

Tolerance cli_tolerance() {
    Tolerance tol;
    tol.max_terms = 1'000'000;
    return tol;
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const FormatError& e) {
        err << "format error: " << e.what() << '\n';
        return exit_format;
    } catch (const AccuracyError& e) {
        err << "accuracy error: " << e.what() << " (partial value " << csv::format(e.partial()) << " after "
            << e.work() << " terms)\n";
        return exit_accuracy;
    } catch (const RangeError& e) {
        err << "accuracy error: " << e.what() << '\n';
        return exit_accuracy;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_config;
    } catch (const std::bad_alloc&) {
        err << "error: out of memory\n";
        return exit_config;
    }
}

EmpiricalConfig empirical_config(const ScenarioFile& sf, const SimOptions& opts) {
    EmpiricalConfig cfg;
    cfg.num_samples = sf.sim.samples;
    cfg.num_realizations = sf.sim.realizations;
    cfg.seed = opts.seed.value_or(sf.sim.seed);
    cfg.lags = sf.lags;
    cfg.thresholds = {sf.thresholds_bpshz, sf.ts_s};
    cfg.oversample = sf.sim.oversample;
    return cfg;
}

// Generates (optionally dumping) or replays the traces, then evaluates them.
std::vector<EmpiricalRun> empirical_runs(const ScenarioFile& sf, EmpiricalConfig& cfg, const SimOptions& opts) {
    const auto s = sf.scenario();
    const auto grid = sf.grid();
    const int mn = sf.antennas.product();

    if (!opts.replay_dir.empty()) {
        std::vector<std::vector<FadingTrace>> realizations;
        for (int r = 0; r < cfg.num_realizations; ++r) {
            std::vector<FadingTrace> traces;
            for (int sub = 0; sub < mn; ++sub) {
                auto t = read_trace(trace_path(opts.replay_dir, r, sub));
                if (t.ts_s != sf.ts_s || t.fm_hz != sf.fm_hz)
                    throw ConfigError(trace_path(opts.replay_dir, r, sub) + ": Ts/fm differ from the scenario");
                traces.push_back(std::move(t));
            }
            realizations.push_back(std::move(traces));
        }
        cfg.num_samples = realizations.front().front().samples.size();
        cfg.validate();
        return evaluate_traces(realizations, sf.snrs(), sf.antennas, cfg);
    }

    if (opts.dump_dir.empty()) return simulate_run(s, grid, sf.snrs(), sf.antennas, cfg);

    cfg.validate();
    std::filesystem::create_directories(opts.dump_dir);
    const SimConfig sim{cfg.num_samples, cfg.seed, cfg.oversample};
    std::vector<std::vector<FadingTrace>> realizations;
    for (int r = 0; r < cfg.num_realizations; ++r) {
        auto traces = generate_mimo_traces(s, grid, sim, sf.antennas, static_cast<std::uint64_t>(r));
        for (int sub = 0; sub < mn; ++sub) write_trace(trace_path(opts.dump_dir, r, sub), traces[sub]);
        realizations.push_back(std::move(traces));
    }
    return evaluate_traces(realizations, sf.snrs(), sf.antennas, cfg);
}

}  // namespace

ErrorBudget parse_budget(const std::string& spec) {
    ErrorBudget b;
    std::size_t start = 0;
    while (start <= spec.size()) {
        const auto end = std::min(spec.find(',', start), spec.size());
        const std::string item = spec.substr(start, end - start);
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("budget: expected key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const double v = parse_number(item.substr(eq + 1));
        if (key == "rel") b.rel = v;
        else if (key == "abs") b.abs = v;
        else if (key == "sigma") b.sigma = v;
        else if (key == "events") b.min_expected_events = v;
        else throw ConfigError("budget: unknown key '" + key + "'");
        start = end + 1;
    }
    b.validate();
    return b;
}

std::string crossings_path(const std::string& out) {
    const std::filesystem::path p(out);
    auto name = p.stem().string() + "_crossings" + p.extension().string();
    return (p.parent_path() / name).string();
}

std::string trace_path(const std::string& dir, int realization, int subchannel) {
    return (std::filesystem::path(dir) /
            ("r" + std::to_string(realization) + "_s" + std::to_string(subchannel) + ".fadt"))
        .string();
}

int cmd_analytic(const std::string& scenario_path, const std::string& out_csv, std::ostream& err) {
    return guarded(err, [&] {
        const auto sf = load_scenario(scenario_path);
        const auto s = sf.scenario();
        const auto& ant = sf.antennas;
        const Tolerance tol = cli_tolerance();

        std::vector<double> varrhos;
        for (int lag : sf.lags) varrhos.push_back(varrho(s, sf.fm_hz, sf.ts_s, lag));
        const double varrho1 = varrho(s, sf.fm_hz, sf.ts_s, 1);

        csv::Writer lags(out_csv, {"snr_db", "lag", "varrho", "nacf_exact", "coeff_exact", "nacf_low", "coeff_low",
                                   "nacf_high", "coeff_high", "coeff_piecewise"});
        csv::Writer cross(crossings_path(out_csv),
                          {"snr_db", "threshold", "phi", "varphi", "cdf", "lcr", "aod", "aod_infinite"});
        for (const auto& snr : sf.snrs()) {
            const double db = snr.db();
            const auto moments = imi_moments(snr, ant, tol);
            const auto exact = kernels::omp::exact_stats_grid(moments, snr, ant, varrhos, tol);
            for (std::size_t i = 0; i < sf.lags.size(); ++i) {
                if (varrhos[i] >= 1.0) {
                    lags.row(db, sf.lags[i], varrhos[i], exact[i].nacf, exact[i].coeff, 1.0, 1.0, 1.0, 1.0,
                             ant.is_siso() ? 1.0 : nan);
                    continue;
                }
                const LagContext ctx(varrhos[i]);
                lags.row(db, sf.lags[i], varrhos[i], exact[i].nacf, exact[i].coeff, ostbc_nacf_low(ctx, ant),
                         ostbc_coeff_low(ctx), ostbc_nacf_high(snr, ant, ctx, tol), ostbc_coeff_high(ant, ctx, tol),
                         ant.is_siso() ? siso_coeff_piecewise(snr, ctx) : nan);
            }
            const auto reports = kernels::omp::crossing_sweep(sf.thresholds_bpshz, snr, ant, varrho1, sf.ts_s, tol);
            for (const auto& r : reports)
                cross.row(db, r.threshold, r.phi, r.varphi, r.cdf, r.lcr, r.aod, r.aod_infinite);
        }
        return static_cast<int>(exit_ok);
    });
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_csv, const SimOptions& opts,
                 std::ostream& err) {
    return guarded(err, [&] {
        const auto sf = load_scenario(scenario_path);
        auto cfg = empirical_config(sf, opts);
        const auto runs = empirical_runs(sf, cfg, opts);

        csv::Writer lags(out_csv,
                         {"snr_db", "lag", "acf", "nacf", "coeff", "nacf_stderr", "coeff_stderr", "degenerate"});
        csv::Writer cross(crossings_path(out_csv),
                          {"snr_db", "threshold", "time_below_frac", "below_stderr", "down_rate", "total_rate",
                           "aod_hat", "down_count", "total_count", "reliable"});
        for (const auto& run : runs) {
            const double db = run.snr.db();
            for (std::size_t i = 0; i < cfg.lags.size(); ++i)
                lags.row(db, cfg.lags[i], run.acf.values[i], run.nacf.values[i], run.coeff.values[i],
                         run.nacf_stderr[i], run.coeff_stderr[i], run.degenerate);
            for (const auto& c : run.crossings)
                cross.row(db, c.threshold, c.time_below_frac, c.below_stderr, c.down_rate, c.total_rate, c.aod_hat,
                          c.down_count, c.total_count, c.reliable);
        }
        return static_cast<int>(exit_ok);
    });
}

int cmd_compare(const std::string& scenario_path, const std::string& out_csv, const SimOptions& opts,
                std::ostream& err) {
    return guarded(err, [&] {
        const auto sf = load_scenario(scenario_path);
        auto cfg = empirical_config(sf, opts);
        opts.budget.validate();
        const auto runs = empirical_runs(sf, cfg, opts);
        const auto table =
            compare_runs(runs, sf.scenario(), sf.grid(), sf.antennas, cfg, opts.budget, cli_tolerance());

        csv::Writer out(out_csv, {"quantity", "snr_db", "index", "analytic", "empirical", "abs_err", "rel_err",
                                  "expected_events", "reliable", "gated", "pass"});
        std::size_t gated = 0;
        std::size_t failed = 0;
        for (const auto& r : table.rows) {
            out.row(r.quantity, r.snr_db, r.index, r.analytic, r.empirical, r.abs_err, r.rel_err, r.expected_events,
                    r.reliable, r.gated, r.pass);
            if (r.gated) ++gated;
            if (r.gated && !r.pass) ++failed;
        }
        err << "compare: " << gated << " gated rows, " << failed << " outside budget\n";
        return static_cast<int>(table.gate_passed ? exit_ok : exit_gate);
    });
}

int cmd_table1(const std::string& out_csv, std::ostream& err) {
    return guarded(err, [&] {
        csv::Writer out(out_csv, {"mn", "c2", "c4", "max_diff", "argmax_varrho"});
        for (int mn : {1, 2, 3, 4, 5, 16, 64}) {
            const auto row = table1_row(mn);
            out.row(row.mn, row.c2, row.c4, row.max_diff, row.argmax_varrho);
        }
        return static_cast<int>(exit_ok);
    });
}

int run(int argc, char** argv) {
    if (const char* env = std::getenv("IMI_THREADS"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const long n = std::strtol(env, &end, 10);
        if (*end != '\0' || n < 1 || n > 4096) {
            std::cerr << "IMI_THREADS must be a positive integer\n";
            return exit_usage;
        }
        kernels::set_max_threads(static_cast<int>(n));
    }

    CLI::App app{"imi: second-order statistics of the instantaneous mutual information of Rayleigh fading channels"};
    app.require_subcommand(1);

    std::string scenario;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string budget;
    SimOptions opts;

    auto* analytic = app.add_subcommand("analytic", "Closed-form ACF, coefficient, LCR and AOD over the scenario grid");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimates from simulated fading traces");
    auto* compare = app.add_subcommand("compare", "Analytic vs Monte Carlo with an error-budget gate");
    auto* table1 = app.add_subcommand("table1", "Taylor coefficients and maximum deviation of the high-SNR coefficient");

    for (auto* sub : {analytic, simulate, compare}) {
        sub->add_option("--scenario", scenario, "Scenario file")->required();
        sub->add_option("--out", out, "Output CSV")->required();
    }
    table1->add_option("--out", out, "Output CSV")->required();
    for (auto* sub : {simulate, compare}) {
        sub->add_option("--seed", seed, "Override sim.seed");
        sub->add_option("--dump", opts.dump_dir, "Write the generated traces to this directory");
        sub->add_option("--replay", opts.replay_dir, "Read traces from this directory instead of simulating");
    }
    compare->add_option("--budget", budget, "Error budget, e.g. rel=0.05,abs=0.03,sigma=3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? exit_ok : exit_usage;
    }
    if (!opts.dump_dir.empty() && !opts.replay_dir.empty()) {
        std::cerr << "--dump and --replay are mutually exclusive\n";
        return exit_usage;
    }
    opts.seed = seed;
    if (!budget.empty()) {
        try {
            opts.budget = parse_budget(budget);
        } catch (const Error& e) {
            std::cerr << "error: " << e.what() << '\n';
            return exit_usage;
        }
    }

    if (analytic->parsed()) return cmd_analytic(scenario, out, std::cerr);
    if (simulate->parsed()) return cmd_simulate(scenario, out, opts, std::cerr);
    if (compare->parsed()) return cmd_compare(scenario, out, opts, std::cerr);
    return cmd_table1(out, std::cerr);
}

}  // namespace imistat::cli
