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

#ifndef MIMO_OUTAGE_EXACT_HPP
#define MIMO_OUTAGE_EXACT_HPP

#include "mimo/core_model.hpp"
#include "mimo/mellin_engine.hpp"

namespace mimo
{
    enum class SumMode
    {
        Compensated, // terms sorted by magnitude, Kahan-summed
        DoubleDouble // same order, double-double accumulator
    };

    // Only the full-correlation evaluator has a binary128 path; it is slower
    // by roughly two orders of magnitude. Auto evaluates in double and repeats
    // in binary128 when the rounding bound of the determinant is too large.
    enum class Precision
    {
        Double,
        Quad,
        Auto
    };

    // |phi(1) - 1| above this fails the self-test run before each CDF.
    inline constexpr double self_test_tolerance = 1e-8;

    struct ExactOptions
    {
        MellinPolicy policy;
        SumMode sum_mode = SumMode::Compensated;
        // full model: Precision::Auto when set, Precision::Double otherwise
        bool extended_precision = true;
    };

    enum class Side
    {
        Rx,
        Tx
    };

    // E[G^(s-1)] for H with i.i.d. entries. Needs n_t >= n_r.
    cplx phi_independent(cplx s, const SystemConfig &cfg, SumMode mode = SumMode::Compensated);

    // Receive-side correlation with strictly distinct spectrum r (size n_r).
    // Both n_t >= n_r and n_t < n_r are handled.
    cplx phi_semi(cplx s, const SystemConfig &cfg, const EigenSpectrum &r, SumMode mode = SumMode::Compensated);

    // Both sides correlated, strictly distinct spectra. Needs n_t >= n_r.
    cplx phi_full(cplx s, const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r,
                  SumMode mode = SumMode::Compensated, Precision precision = Precision::Auto);

    // n_t < n_r is evaluated through the interchanged configuration.
    OutageResult outage_independent(const SystemConfig &cfg, const ExactOptions &opt = {});

    // spectrum belongs to the receive side for Side::Rx and to the transmit
    // side for Side::Tx; a transmit-correlated channel is evaluated as the
    // receive-correlated channel with n_t and n_r exchanged.
    OutageResult outage_semi(const SystemConfig &cfg, const EigenSpectrum &spectrum, Side side,
                             const ExactOptions &opt = {});

    OutageResult outage_full(const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r,
                             const ExactOptions &opt = {});

    // Validates, absorbs power allocation, interchanges and dispatches.
    OutageResult outage_exact(const ChannelScenario &scenario, const SystemConfig &cfg, const ExactOptions &opt = {});

    // The Mellin transform used by outage_exact for a scenario, after the
    // same normalization. Returned function takes s and yields E[G^(s-1)].
    PhiFunction phi_for(const ChannelScenario &scenario, const SystemConfig &cfg, SumMode mode = SumMode::Compensated,
                        Precision precision = Precision::Auto);

} // namespace mimo

#endif
