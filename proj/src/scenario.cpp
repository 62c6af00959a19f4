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

#include "imistat/scenario.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "imistat/error.hpp"

namespace imistat {

namespace {

struct ParseFailure {
    std::size_t offset;  // within the field being parsed
    std::string message;
};

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    double parse() {
        skip();
        if (pos_ == s_.size()) fail("expected a number");
        const double v = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        if (!std::isfinite(v)) fail("value is not finite");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseFailure{pos_, msg}; }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    double expr() {
        double v = term();
        for (;;) {
            if (eat('+')) v += term();
            else if (eat('-')) v -= term();
            else return v;
        }
    }

    double term() {
        double v = unary();
        for (;;) {
            if (eat('*')) {
                v *= unary();
            } else if (eat('/')) {
                const std::size_t at = pos_;
                const double d = unary();
                if (d == 0.0) throw ParseFailure{at, "division by zero"};
                v /= d;
            } else {
                return v;
            }
        }
    }

    double unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    double power() {
        const double base = primary();
        if (eat('^')) return std::pow(base, unary());
        return base;
    }

    bool at_pi() {
        skip();
        return s_.compare(pos_, 2, "pi") == 0 &&
               (pos_ + 2 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 2])));
    }

    double primary() {
        skip();
        if (pos_ == s_.size()) fail("expected a number");
        if (eat('(')) {
            const double v = expr();
            if (!eat(')')) fail("expected ')'");
            return v;
        }
        if (at_pi()) {
            pos_ += 2;
            return std::numbers::pi;
        }
        const char c = s_[pos_];
        if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '.')) fail("expected a number");
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin) fail("expected a number");
        pos_ += static_cast<std::size_t>(end - begin);
        if (at_pi()) {  // "2pi"
            pos_ += 2;
            return v * std::numbers::pi;
        }
        return v;
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

struct Field {
    std::string text;
    std::size_t column;  // 1-based column of text[0] in the line
};

std::vector<Field> split(const Field& f, char sep) {
    std::vector<Field> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= f.text.size(); ++i) {
        if (i == f.text.size() || f.text[i] == sep) {
            std::string piece = f.text.substr(start, i - start);
            std::size_t lead = 0;
            while (lead < piece.size() && std::isspace(static_cast<unsigned char>(piece[lead]))) ++lead;
            std::size_t trail = piece.size();
            while (trail > lead && std::isspace(static_cast<unsigned char>(piece[trail - 1]))) --trail;
            out.push_back({piece.substr(lead, trail - lead), f.column + start + lead});
            start = i + 1;
        }
    }
    return out;
}

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void error(std::size_t line, std::size_t column, const std::string& msg) const {
        throw ConfigError(source_ + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + msg);
    }

    double number(const Field& f, std::size_t line) const {
        if (f.text.empty()) error(line, f.column, "expected a number");
        try {
            return ExprParser(f.text).parse();
        } catch (const ParseFailure& p) {
            error(line, f.column + p.offset, p.message);
        }
    }

    long long integer(const Field& f, std::size_t line) const {
        const double v = number(f, line);
        if (v != std::floor(v) || std::abs(v) > 9.0e15) error(line, f.column, "expected an integer");
        return static_cast<long long>(v);
    }

    std::uint64_t unsigned64(const Field& f, std::size_t line) const {
        std::uint64_t v = 0;
        const char* b = f.text.data();
        const char* e = b + f.text.size();
        const auto [ptr, ec] = std::from_chars(b, e, v);
        if (ec == std::errc() && ptr == e) return v;
        const long long w = integer(f, line);
        if (w < 0) error(line, f.column, "expected a nonnegative integer");
        return static_cast<std::uint64_t>(w);
    }

    std::vector<Field> tuple(const Field& f, std::size_t line, std::size_t n, const char* what) const {
        auto parts = split(f, ',');
        if (parts.size() != n)
            error(line, f.column, std::string(what) + " expects " + std::to_string(n) + " comma-separated values");
        return parts;
    }

    // Comma-separated values, each either a number or an inclusive a:step:b range.
    std::vector<double> list(const Field& f, std::size_t line) const {
        std::vector<double> out;
        for (const auto& item : split(f, ',')) {
            auto r = split(item, ':');
            if (r.size() == 1) {
                out.push_back(number(item, line));
                continue;
            }
            if (r.size() != 3) error(line, item.column, "a range is written start:step:stop");
            const double a = number(r[0], line);
            const double step = number(r[1], line);
            const double b = number(r[2], line);
            if (!(step > 0.0)) error(line, r[1].column, "range step must be > 0");
            if (b < a) error(line, r[2].column, "range stop is below its start");
            const double count = std::floor((b - a) / step + 1e-9) + 1.0;
            if (count > 1e6) error(line, item.column, "range has more than 10^6 entries");
            for (long long k = 0; k < static_cast<long long>(count); ++k) out.push_back(a + k * step);
        }
        return out;
    }

    std::vector<int> int_list(const Field& f, std::size_t line) const {
        std::vector<int> out;
        for (double v : list(f, line)) {
            const double r = std::round(v);
            if (std::abs(v - r) > 1e-9 || std::abs(r) > 1e9) error(line, f.column, "expected integers");
            out.push_back(static_cast<int>(r));
        }
        return out;
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
};

}  // namespace

double parse_number(const std::string& expr) {
    try {
        return ExprParser(expr).parse();
    } catch (const ParseFailure& p) {
        throw ConfigError("column " + std::to_string(p.offset + 1) + ": " + p.message);
    }
}

std::vector<SnrPoint> ScenarioFile::snrs() const {
    std::vector<SnrPoint> out;
    for (double db : snr_db) out.push_back(SnrPoint::from_db(db));
    return out;
}

ScenarioFile parse_scenario(const std::string& text, const std::string& source) {
    const Reader rd(source);
    ScenarioFile sf;
    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    std::size_t line = 0;

    while (std::getline(in, raw)) {
        ++line;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        const std::string content = raw.substr(0, raw.find('#'));
        const auto first = content.find_first_not_of(" \t");
        if (first == std::string::npos) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos) rd.error(line, first + 1, "expected 'key = value'");

        std::string key = content.substr(first, eq - first);
        while (!key.empty() && std::isspace(static_cast<unsigned char>(key.back()))) key.pop_back();
        const std::size_t key_col = first + 1;
        std::size_t vstart = eq + 1;
        while (vstart < content.size() && std::isspace(static_cast<unsigned char>(content[vstart]))) ++vstart;
        std::string value = content.substr(vstart);
        while (!value.empty() && std::isspace(static_cast<unsigned char>(value.back()))) value.pop_back();
        const Field field{value, vstart + 1};
        if (value.empty()) rd.error(line, eq + 2, "missing value for '" + key + "'");

        const bool repeatable = key == "cluster" || key == "cluster_deg";
        if (!repeatable && !seen.insert(key).second) rd.error(line, key_col, "duplicate key '" + key + "'");

        if (repeatable) {
            const auto p = rd.tuple(field, line, 3, key.c_str());
            double theta = rd.number(p[2], line);
            if (key == "cluster_deg") theta *= std::numbers::pi / 180.0;
            sf.clusters.push_back({rd.number(p[0], line), rd.number(p[1], line), theta});
        } else if (key == "fm_hz") {
            sf.fm_hz = rd.number(field, line);
        } else if (key == "ts_s") {
            sf.ts_s = rd.number(field, line);
        } else if (key == "antennas") {
            const auto p = rd.tuple(field, line, 2, "antennas");
            const long long m = rd.integer(p[0], line);
            const long long n = rd.integer(p[1], line);
            if (m < 1 || n < 1 || m > 1024 || n > 1024) rd.error(line, field.column, "antennas: M and N must be >= 1");
            try {
                sf.antennas = AntennaConfig(static_cast<int>(m), static_cast<int>(n));
            } catch (const ConfigError& e) {
                rd.error(line, field.column, e.what());
            }
        } else if (key == "snr_db") {
            sf.snr_db = rd.list(field, line);
        } else if (key == "thresholds_bpshz") {
            sf.thresholds_bpshz = rd.list(field, line);
        } else if (key == "lags") {
            sf.lags = rd.int_list(field, line);
        } else if (key == "sim.samples") {
            const long long v = rd.integer(field, line);
            if (v < 2) rd.error(line, field.column, "sim.samples must be >= 2");
            sf.sim.samples = static_cast<std::size_t>(v);
        } else if (key == "sim.realizations") {
            const long long v = rd.integer(field, line);
            if (v < 1 || v > 1'000'000) rd.error(line, field.column, "sim.realizations must be >= 1");
            sf.sim.realizations = static_cast<int>(v);
        } else if (key == "sim.seed") {
            sf.sim.seed = rd.unsigned64(field, line);
        } else if (key == "sim.oversample") {
            const long long v = rd.integer(field, line);
            if (v < 1 || v > 64) rd.error(line, field.column, "sim.oversample must lie in [1, 64]");
            sf.sim.oversample = static_cast<int>(v);
        } else {
            rd.error(line, key_col, "unknown key '" + key + "'");
        }
    }

    const std::string& src = rd.source();
    auto require = [&](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(src + ": " + msg);
    };
    require(!sf.clusters.empty(), "at least one 'cluster' line is required");
    require(seen.count("fm_hz") == 1, "missing key 'fm_hz'");
    require(seen.count("ts_s") == 1, "missing key 'ts_s'");
    require(!sf.snr_db.empty(), "missing key 'snr_db'");
    require(!sf.lags.empty(), "missing key 'lags'");

    try {
        (void)sf.scenario();
        sf.grid().validate();
        (void)sf.snrs();
        for (std::size_t i = 1; i < sf.thresholds_bpshz.size(); ++i)
            if (sf.thresholds_bpshz[i] < sf.thresholds_bpshz[i - 1])
                throw ConfigError("thresholds_bpshz must be sorted ascending");
        for (double th : sf.thresholds_bpshz)
            if (!(th >= 0.0)) throw ConfigError("thresholds_bpshz must be >= 0");
    } catch (const ConfigError& e) {
        throw ConfigError(src + ": " + e.what());
    }
    return sf;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("cannot open scenario file " + path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return parse_scenario(ss.str(), path);
}

}  // namespace imistat
