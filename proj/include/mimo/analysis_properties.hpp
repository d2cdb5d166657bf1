// SPDX-License-Identifier: Apache-2.0
//
// mimo-outage: outage probability of Kronecker-correlated Rayleigh MIMO channels
// Copyright (C) 2026 The mimo-outage authors
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


#ifndef MIMO_ANALYSIS_PROPERTIES_HPP
#define MIMO_ANALYSIS_PROPERTIES_HPP

#include "mimo/core_model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace mimo
{
    // One pass/fail line of a property check. worst is the largest
    // violation or discrepancy seen (0 when not meaningful).
    struct CheckRecord
    {
        std::string name;
        bool passed = false;
        double worst = 0.0;
        std::string detail;
    };

    // v1 is majorized by v2: prefix sums of v1 never exceed those of v2 and
    // the totals agree within 1e-9. Both must be descending and of equal
    // length (LengthMismatch, InvalidArgument).
    bool majorizes(const std::vector<double> &v1, const std::vector<double> &v2);

    // Double permutation sum of a product-form eta(s1, s2) = prod_i h(s1_i, s2_i)
    // against n! times the single sum over s2 with s1 the identity, in exact
    // rational arithmetic, for random integer-ratio tables h. n <= 4.
    // A non-zero reference_offset is added to the reduced side (negative control).
    CheckRecord lemma1_reduction_check(int n, int trials, std::uint64_t seed = 1, int reference_offset = 0);

    // First differences > 0 and second differences >= -1e-9 (relative to the
    // local magnitude) over an increasing grid.
    CheckRecord convexity_scan(const std::function<double(double)> &kernel, const std::vector<double> &grid,
                               const std::string &name = "convexity");

    // g_0 as a function of the rate for one configuration.
    std::function<double(double)> g0_of_rate(int n_t, int n_r);

    // asym_full at identity spectra against asym_independent, and with one
    // identity side against asym_semi, at 1e-9 relative. Uses fixed distinct
    // test spectra for the non-identity side. skew scales the reference
    // values (negative control).
    CheckRecord special_case_embedding_check(const SystemConfig &cfg, double skew = 1.0);

} // namespace mimo

#endif
