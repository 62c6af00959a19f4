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

#include <cmath>
#include <numbers>
#include <string>

#include "imistat/error.hpp"
#include "imistat/scenario.hpp"

using namespace imistat;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

const std::string base = "cluster = 1, 0, 0\nfm_hz = 10\nts_s = 0.005\nsnr_db = 10\nlags = 1\n";

std::string error_of(const std::string& text) {
    try {
        (void)parse_scenario(text, "s.cfg");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("number expressions", "[scenario]") {
    CHECK(parse_number("2") == 2.0);
    CHECK(parse_number("1/200") == 0.005);
    CHECK(parse_number("2^20") == 1048576.0);
    CHECK(parse_number("-2^2") == -4.0);
    CHECK_THAT(parse_number("11pi/18"), WithinRel(11.0 * pi / 18.0, 1e-15));
    CHECK_THAT(parse_number("2 * (pi + 1)"), WithinRel(2.0 * (pi + 1.0), 1e-15));
    CHECK(parse_number("1e-3") == 1e-3);
    CHECK_THROWS_AS(parse_number("1/0"), ConfigError);
    CHECK_THROWS_AS(parse_number("2 +"), ConfigError);
    CHECK_THROWS_AS(parse_number("abc"), ConfigError);
}

TEST_CASE("data files parse", "[scenario]") {
    const auto c = load_scenario(IMISTAT_TEST_DATA "/clarke.cfg");
    CHECK(c.clusters.size() == 1);
    CHECK(c.ts_s == 0.005);
    CHECK(c.lags.size() == 41);
    CHECK(c.thresholds_bpshz.size() == 12);
    CHECK(c.sim.samples == (std::size_t{1} << 18));
    CHECK(c.sim.oversample == 2);
    const auto t = load_scenario(IMISTAT_TEST_DATA "/three_cluster.cfg");
    REQUIRE(t.clusters.size() == 3);
    CHECK_THAT(t.clusters[2].mean_aoa_rad, WithinRel(53.0 * pi / 36.0, 1e-15));
    CHECK(t.antennas.product() == 4);
    CHECK(t.lags.back() == 199);
    CHECK(t.snrs().size() == 5);
}

TEST_CASE("defaults and optional keys", "[scenario]") {
    const auto s = parse_scenario("cluster = 0.5, 0, 0\ncluster_deg = 0.5, 1, 90\nfm_hz = 10\nts_s = 0.005\n"
                                  "snr_db = 10\nlags = 1\nsim.seed = 18446744073709551615\n");
    CHECK(s.antennas.is_siso());
    CHECK(s.thresholds_bpshz.empty());
    CHECK(s.sim.seed == 18446744073709551615ULL);
    CHECK(s.sim.realizations == 1);
    CHECK_THAT(s.clusters[1].mean_aoa_rad, WithinRel(pi / 2.0, 1e-15));
    const auto r = parse_scenario("# comment\r\n" + base + "thresholds_bpshz = 0:0.5:2, 3 # trailing\n");
    CHECK(r.thresholds_bpshz == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0, 3.0});
}

TEST_CASE("diagnostics carry line and column", "[scenario]") {
    CHECK_THAT(error_of(base + "bogus = 1\n"), ContainsSubstring("s.cfg:6:1: unknown key 'bogus'"));
    CHECK_THAT(error_of(base + "fm_hz = 3\n"), ContainsSubstring("s.cfg:6:1: duplicate key 'fm_hz'"));
    CHECK_THAT(error_of(base + "antennas = 2\n"), ContainsSubstring("s.cfg:6:12:"));
    CHECK_THAT(error_of(base + "sim.samples = 12x\n"), ContainsSubstring("s.cfg:6:17: unexpected 'x'"));
    CHECK_THAT(error_of(base + "justtext\n"), ContainsSubstring("s.cfg:6:1: expected 'key = value'"));
    CHECK_THAT(error_of("cluster = 1,0,0\nfm_hz=10\nts_s=0.005\nsnr_db=1\nlags = 1.5\n"),
               ContainsSubstring("s.cfg:5:8: expected integers"));
    CHECK_THAT(error_of("fm_hz = 10\n"), ContainsSubstring("cluster"));
    CHECK_THAT(error_of("cluster = 1,0,0\nts_s=1\nsnr_db=1\nlags=1\n"), ContainsSubstring("missing key 'fm_hz'"));
    CHECK_THAT(error_of("cluster = 0.5,0,0\ncluster = 0.4,0,0\nfm_hz=10\nts_s=0.005\nsnr_db=1\nlags=1\n"),
               ContainsSubstring("cluster weights must sum to 1"));
    CHECK_THAT(error_of(base + "thresholds_bpshz = 2, 1\n"), ContainsSubstring("sorted"));
    CHECK_THAT(error_of("cluster = 1,0,0\nfm_hz=-10\nts_s=0.1\nsnr_db=1\nlags=1\n"), ContainsSubstring("s.cfg: "));
    CHECK_THROWS_AS(load_scenario("/nonexistent/file.cfg"), ConfigError);
}
