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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <string>
#include <type_traits>
#include <vector>

#include "imistat/error.hpp"

namespace imistat::csv {

/// 17 significant digits, enough to round-trip any double,
/// with lowercase inf/nan.
inline std::string format(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format(bool v) { return v ? "1" : "0"; }

template <class T>
    requires(std::is_integral_v<T> && !std::is_same_v<T, bool>)
std::string format(T v) {
    return std::to_string(v);
}

inline std::string format(const std::string& v) { return v; }
inline std::string format(const char* v) { return v; }

/// Comma-separated writer with LF line endings.
class Writer {
public:
    Writer(const std::string& path, std::initializer_list<const char*> header) : path_(path), os_(path, std::ios::binary) {
        if (!os_) throw Error("cannot open " + path + " for writing");
        bool first = true;
        for (const char* h : header) {
            if (!first) os_ << ',';
            os_ << h;
            first = false;
        }
        os_ << '\n';
        columns_ = header.size();
    }

    template <class... T>
    void row(const T&... values) {
        static_assert(sizeof...(T) > 0);
        if (sizeof...(T) != columns_) throw Error(path_ + ": row width does not match header");
        bool first = true;
        ((os_ << (first ? "" : ",") << format(values), first = false), ...);
        os_ << '\n';
        if (!os_) throw Error("write failed: " + path_);
    }

private:
    std::string path_;
    std::ofstream os_;
    std::size_t columns_ = 0;
};

}  // namespace imistat::csv
