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

#include "imistat/error.hpp"

namespace imistat {

/// Truncation controls shared by every infinite series and quadrature.
struct Tolerance {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    long long max_terms = 10000;
    int max_quad_refinements = 60;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw ConfigError("tolerance: rel_tol and abs_tol must be positive");
        if (max_terms < 1)
            throw ConfigError("tolerance: max_terms must be >= 1");
        if (max_quad_refinements < 1)
            throw ConfigError("tolerance: max_quad_refinements must be >= 1");
    }
};

}  // namespace imistat
