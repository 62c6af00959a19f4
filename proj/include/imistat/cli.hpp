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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "imistat/monte_carlo.hpp"

namespace imistat::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_config = 2,
    exit_format = 3,
    exit_accuracy = 4,
    exit_gate = 5,
};

struct SimOptions {
    std::optional<std::uint64_t> seed;  ///< overrides sim.seed
    std::string dump_dir;               ///< write generated traces here
    std::string replay_dir;             ///< read traces from here instead of generating
    ErrorBudget budget;
};

/// "rel=0.05,abs=0.03,sigma=3"; any subset of keys, in any order.
ErrorBudget parse_budget(const std::string& spec);

/// "<stem>_crossings<ext>" next to `out`.
std::string crossings_path(const std::string& out);

/// Trace file of one subchannel of one realization inside a dump directory.
std::string trace_path(const std::string& dir, int realization, int subchannel);

// Each command reports errors on `err` and returns an ExitCode.
int cmd_analytic(const std::string& scenario_path, const std::string& out_csv, std::ostream& err);
int cmd_simulate(const std::string& scenario_path, const std::string& out_csv, const SimOptions& opts,
                 std::ostream& err);
int cmd_compare(const std::string& scenario_path, const std::string& out_csv, const SimOptions& opts,
                std::ostream& err);
int cmd_table1(const std::string& out_csv, std::ostream& err);

/// Full command line, including subcommand dispatch and IMI_THREADS.
int run(int argc, char** argv);

}  // namespace imistat::cli
