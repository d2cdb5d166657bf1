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

#include "mimo/outage_asymptotic.hpp"
#include "mimo/residue_kernel.hpp"

#include <cmath>

namespace mimo
{
    namespace
    {
        SystemConfig normalized(const SystemConfig &cfg) { return cfg.n_t() >= cfg.n_r() ? cfg : cfg.swapped(); }

        double g0(const SystemConfig &cfg)
        {
            const SystemConfig c = normalized(cfg);
            return evaluate(g_n_full(std::vector<int>(static_cast<std::size_t>(c.n_r()), 0), c), c.threshold());
        }

        // rho^(-n_t n_r) times the permutation kernel at 2^R
        double independent_value(const SystemConfig &cfg)
        {
            const SystemConfig c = normalized(cfg);
            return std::pow(c.rho(), -static_cast<double>(diversity_order(c))) *
                   evaluate(permutation_kernel(c), c.threshold());
        }

        void check_size(const EigenSpectrum &e, int n, const char *what)
        {
            if (e.size() != n)
                throw Error(ErrorCode::DimensionMismatch, std::string(what) + " spectrum has the wrong size");
        }
    } // namespace

    int diversity_order(const SystemConfig &cfg) { return cfg.n_t() * cfg.n_r(); }

    double coding_gain(const SystemConfig &cfg) { return std::pow(g0(cfg), -1.0 / diversity_order(cfg)); }

    double spatial_correlation_factor(const EigenSpectrum &t, const EigenSpectrum &r, const SystemConfig &cfg)
    {
        check_size(t, cfg.n_t(), "transmit");
        check_size(r, cfg.n_r(), "receive");
        return std::pow(r.determinant(), -cfg.n_t()) * std::pow(t.determinant(), -cfg.n_r());
    }

    PowerFactor power_allocation_factor(const EigenSpectrum &x, const SystemConfig &cfg)
    {
        check_size(x, cfg.n_t(), "power allocation");
        const double n = cfg.n_t();
        return {std::pow(x.determinant(), -cfg.n_r()), std::pow(x.trace() / n, -n * cfg.n_r())};
    }

    OutageResult asym_independent(const SystemConfig &cfg)
    {
        return OutageResult::make(independent_value(cfg), 0.0, Method::Asymptotic);
    }

    OutageResult asym_semi(const SystemConfig &cfg, const EigenSpectrum &spectrum, Side side)
    {
        const int own = side == Side::Rx ? cfg.n_r() : cfg.n_t();
        const int other = side == Side::Rx ? cfg.n_t() : cfg.n_r();
        check_size(spectrum, own, "correlated side");
        const double s = std::pow(spectrum.determinant(), -other);
        return OutageResult::make(s * independent_value(cfg), 0.0, Method::Asymptotic);
    }

    OutageResult asym_full(const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r)
    {
        const double s = spatial_correlation_factor(t, r, cfg);
        const double p = std::pow(cfg.rho(), -static_cast<double>(diversity_order(cfg))) * s * g0(cfg);
        return OutageResult::make(p, 0.0, Method::Asymptotic);
    }

    AsymptoteDecomposition unified_asymptote(const ChannelScenario &scenario, const SystemConfig &cfg)
    {
        const ChannelScenario sc = validate_scenario(scenario, cfg);
        AsymptoteDecomposition d;
        d.diversity_order = diversity_order(cfg);
        d.coding_gain = coding_gain(cfg);
        d.correlation_factor = spatial_correlation_factor(sc.t_spectrum, sc.r_spectrum, cfg);
        d.power_factor = power_allocation_factor(sc.x_spectrum, cfg).value;
        d.probability =
            d.power_factor * d.correlation_factor * std::pow(d.coding_gain * cfg.rho(), -d.diversity_order);
        return d;
    }

    AsymptoteDecomposition unified_asymptote_effective(const EigenSpectrum &t_effective, const EigenSpectrum &r,
                                                       const SystemConfig &cfg)
    {
        AsymptoteDecomposition d;
        d.diversity_order = diversity_order(cfg);
        d.coding_gain = coding_gain(cfg);
        d.correlation_factor = spatial_correlation_factor(t_effective, r, cfg);
        d.power_factor = 1.0;
        d.merged_effective = true;
        d.probability = d.correlation_factor * std::pow(d.coding_gain * cfg.rho(), -d.diversity_order);
        return d;
    }

    OutageResult outage_asymptotic(const ChannelScenario &scenario, const SystemConfig &cfg)
    {
        const ChannelScenario sc = validate_scenario(scenario, cfg);
        if (!sc.x_spectrum.is_identity())
            return OutageResult::make(unified_asymptote(sc, cfg).probability, 0.0, Method::Asymptotic);
        switch (sc.model)
        {
        case Model::Independent:
            return asym_independent(cfg);
        case Model::SemiRx:
            return asym_semi(cfg, sc.r_spectrum, Side::Rx);
        case Model::SemiTx:
            return asym_semi(cfg, sc.t_spectrum, Side::Tx);
        case Model::Full:
            return asym_full(cfg, sc.t_spectrum, sc.r_spectrum);
        }
        throw Error(ErrorCode::InvalidArgument, "unknown model");
    }

} // namespace mimo
