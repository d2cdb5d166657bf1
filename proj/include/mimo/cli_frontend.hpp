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


#ifndef MIMO_CLI_FRONTEND_HPP
#define MIMO_CLI_FRONTEND_HPP

#include "mimo/analysis_properties.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace mimo
{
    // Exit codes of the command-line tool.
    inline constexpr int exit_ok = 0;
    inline constexpr int exit_verification_failed = 1;
    inline constexpr int exit_usage = 2;

    // "a:b:step" (inclusive, step > 0), a comma list or a single number.
    // Throws InvalidArgument on malformed or empty ranges.
    std::vector<double> parse_range(const std::string &text);

    // Comma-separated reals. Throws InvalidArgument.
    std::vector<double> parse_real_list(const std::string &text);

    // Checks known to the verify command, in run order.
    const std::vector<std::string> &verify_check_names();

    // Runs the named checks (all when only is empty). A check listed in
    // fault is run against a deliberately corrupted reference, which must
    // make it fail. Unknown names throw InvalidArgument.
    std::vector<CheckRecord> run_verify_suite(const std::vector<std::string> &only,
                                              const std::vector<std::string> &fault = {});

    // Entry point behind the mimo_outage executable. Writes CSV or reports
    // to out and diagnostics to err. The verify fault list is read from
    // MIMO_OUTAGE_VERIFY_FAULT (comma-separated check names).
    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mimo

#endif
