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

#ifndef MIMO_OUTAGE_ASYMPTOTIC_HPP
#define MIMO_OUTAGE_ASYMPTOTIC_HPP

#include "mimo/core_model.hpp"
#include "mimo/outage_exact.hpp"

namespace mimo
{
    // High-SNR outage: P * S * (C rho)^(-d).
    struct AsymptoteDecomposition
    {
        int diversity_order = 0;
        double coding_gain = 0.0;
        double correlation_factor = 1.0; // S(R_t, R_r)
        double power_factor = 1.0;       // P(R_x)
        double probability = 0.0;
        // S and P reported as one factor in correlation_factor (power_factor = 1),
        // for an effective transmit spectrum that does not split.
        bool merged_effective = false;
    };

    // Any antenna order; n_t < n_r uses the interchanged kernel.
    OutageResult asym_independent(const SystemConfig &cfg);

    // Identity spectra are accepted (the closed form is continuous there).
    OutageResult asym_semi(const SystemConfig &cfg, const EigenSpectrum &spectrum, Side side);

    OutageResult asym_full(const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r);

    int diversity_order(const SystemConfig &cfg);

    // g_0(R)^(-1 / (n_t n_r)).
    double coding_gain(const SystemConfig &cfg);

    // det(R_r)^(-n_t) det(R_t)^(-n_r).
    double spatial_correlation_factor(const EigenSpectrum &t, const EigenSpectrum &r, const SystemConfig &cfg);

    struct PowerFactor
    {
        double value;       // det(R_x)^(-n_r)
        double am_gm_bound; // (tr(R_x) / n_t)^(-n_t n_r) <= value
    };

    PowerFactor power_allocation_factor(const EigenSpectrum &x, const SystemConfig &cfg);

    // Decomposition for a validated scenario. A diagonal R_x aligned with R_t
    // keeps S and P separate.
    AsymptoteDecomposition unified_asymptote(const ChannelScenario &scenario, const SystemConfig &cfg);

    // Decomposition from an effective transmit spectrum (eigenvalues of
    // R_t^(1/2) R_x R_t^(1/2)); S and P are merged.
    AsymptoteDecomposition unified_asymptote_effective(const EigenSpectrum &t_effective, const EigenSpectrum &r,
                                                       const SystemConfig &cfg);

    // Dispatches on the scenario like outage_exact.
    OutageResult outage_asymptotic(const ChannelScenario &scenario, const SystemConfig &cfg);

} // namespace mimo

#endif
