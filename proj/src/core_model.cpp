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

#include "mimo/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>

namespace mimo
{
    std::string_view to_string(ErrorCode code)
    {
        switch (code)
        {
        case ErrorCode::InvalidArgument:
            return "InvalidArgument";
        case ErrorCode::NonDistinctSpectrum:
            return "NonDistinctSpectrum";
        case ErrorCode::TraceViolation:
            return "TraceViolation";
        case ErrorCode::DimensionMismatch:
            return "DimensionMismatch";
        case ErrorCode::PoleAtNonpositiveInteger:
            return "PoleAtNonpositiveInteger";
        case ErrorCode::InvalidDegenerateParameters:
            return "InvalidDegenerateParameters";
        case ErrorCode::EmptyPoleSet:
            return "EmptyPoleSet";
        case ErrorCode::PermutationBudgetExceeded:
            return "PermutationBudgetExceeded";
        case ErrorCode::LengthMismatch:
            return "LengthMismatch";
        case ErrorCode::NumericalFailure:
            return "NumericalFailure";
        }
        return "Unknown";
    }

    Error::Error(ErrorCode code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    std::string_view to_string(Model m)
    {
        switch (m)
        {
        case Model::Independent:
            return "ind";
        case Model::SemiRx:
            return "semi-rx";
        case Model::SemiTx:
            return "semi-tx";
        case Model::Full:
            return "full";
        }
        return "?";
    }

    std::string_view to_string(Method m)
    {
        switch (m)
        {
        case Method::Exact:
            return "exact";
        case Method::Asymptotic:
            return "asym";
        case Method::MonteCarlo:
            return "mc";
        }
        return "?";
    }

    // ---- SystemConfig ------------------------------------------------------

    SystemConfig::SystemConfig(int n_t, int n_r, double rate, double snr_db, double rho)
        : n_t_(n_t), n_r_(n_r), rate_(rate), snr_db_(snr_db), rho_(rho)
    {
        if (n_t < 1 || n_r < 1)
            throw Error(ErrorCode::InvalidArgument, "antenna counts must be >= 1");
        if (!(rate > 0.0) || !std::isfinite(rate))
            throw Error(ErrorCode::InvalidArgument, "rate must be positive");
        if (!std::isfinite(snr_db) || !(rho > 0.0) || !std::isfinite(rho))
            throw Error(ErrorCode::InvalidArgument, "SNR must be finite");
    }

    SystemConfig::SystemConfig(int n_t, int n_r, double rate, double snr_db)
        : SystemConfig(n_t, n_r, rate, snr_db, std::pow(10.0, snr_db / 10.0))
    {
    }

    SystemConfig SystemConfig::from_linear(int n_t, int n_r, double rate, double rho)
    {
        if (!(rho > 0.0))
            throw Error(ErrorCode::InvalidArgument, "rho must be positive");
        return SystemConfig(n_t, n_r, rate, 10.0 * std::log10(rho), rho);
    }

    double SystemConfig::threshold() const { return std::exp2(rate_); }

    SystemConfig SystemConfig::with_snr_db(double snr_db) const { return SystemConfig(n_t_, n_r_, rate_, snr_db); }

    SystemConfig SystemConfig::with_rate(double rate) const { return SystemConfig(n_t_, n_r_, rate, snr_db_, rho_); }

    SystemConfig SystemConfig::swapped() const { return SystemConfig(n_r_, n_t_, rate_, snr_db_, rho_); }

    // ---- EigenSpectrum -----------------------------------------------------

    namespace
    {
        bool all_exactly_one(const std::vector<double> &v)
        {
            return std::all_of(v.begin(), v.end(), [](double x) { return x == 1.0; });
        }

        void require_descending_finite(const std::vector<double> &v)
        {
            if (v.empty())
                throw Error(ErrorCode::InvalidArgument, "empty spectrum");
            for (double x : v)
                if (!std::isfinite(x))
                    throw Error(ErrorCode::InvalidArgument, "non-finite eigenvalue");
            for (size_t i = 1; i < v.size(); ++i)
                if (v[i] > v[i - 1])
                    throw Error(ErrorCode::InvalidArgument, "eigenvalues must be given in descending order");
        }

        void require_distinct(const std::vector<double> &v, double min_gap)
        {
            for (size_t i = 1; i < v.size(); ++i)
                if (v[i - 1] - v[i] <= min_gap)
                    throw Error(ErrorCode::NonDistinctSpectrum, "eigenvalues must be strictly distinct");
        }

        void require_positive(const std::vector<double> &v)
        {
            for (double x : v)
                if (!(x > 0.0))
                    throw Error(ErrorCode::InvalidArgument, "eigenvalues must be positive");
        }

        double sum_of(const std::vector<double> &v) { return std::accumulate(v.begin(), v.end(), 0.0); }
    } // namespace

    EigenSpectrum EigenSpectrum::identity(int n)
    {
        if (n < 1)
            throw Error(ErrorCode::InvalidArgument, "spectrum size must be >= 1");
        return EigenSpectrum(std::vector<double>(static_cast<size_t>(n), 1.0), Kind::Identity);
    }

    EigenSpectrum EigenSpectrum::correlation(std::vector<double> values, bool renormalize)
    {
        require_descending_finite(values);
        if (all_exactly_one(values))
            return identity(static_cast<int>(values.size()));
        const double n = static_cast<double>(values.size());
        if (renormalize)
        {
            const double s = sum_of(values);
            if (!(s > 0.0))
                throw Error(ErrorCode::TraceViolation, "cannot renormalize a non-positive trace");
            for (double &x : values)
                x *= n / s;
        }
        require_distinct(values, 1e-9 * n);
        require_positive(values);
        if (std::abs(sum_of(values) - n) > 1e-9 * n)
            throw Error(ErrorCode::TraceViolation, "trace must equal the spectrum size");
        return EigenSpectrum(std::move(values), Kind::Correlation);
    }

    EigenSpectrum EigenSpectrum::power(std::vector<double> values, bool renormalize)
    {
        require_descending_finite(values);
        if (all_exactly_one(values))
            return identity(static_cast<int>(values.size()));
        const double n = static_cast<double>(values.size());
        require_positive(values);
        if (renormalize)
        {
            const double s = sum_of(values);
            for (double &x : values)
                x *= n / s;
        }
        if (sum_of(values) > n * (1.0 + 1e-9))
            throw Error(ErrorCode::TraceViolation, "input covariance trace exceeds n_t");
        return EigenSpectrum(std::move(values), Kind::Power);
    }

    EigenSpectrum EigenSpectrum::effective(std::vector<double> values)
    {
        require_descending_finite(values);
        require_positive(values);
        return EigenSpectrum(std::move(values), Kind::Effective);
    }

    double EigenSpectrum::determinant() const
    {
        double d = 1.0;
        for (double x : values_)
            d *= x;
        return d;
    }

    double EigenSpectrum::trace() const { return sum_of(values_); }

    std::vector<double> EigenSpectrum::reciprocals() const
    {
        std::vector<double> r(values_.size());
        std::transform(values_.begin(), values_.end(), r.begin(), [](double x) { return 1.0 / x; });
        return r;
    }

    // ---- ChannelScenario ---------------------------------------------------

    ChannelScenario ChannelScenario::independent(int n_t, int n_r)
    {
        return {Model::Independent, EigenSpectrum::identity(n_t), EigenSpectrum::identity(n_r),
                EigenSpectrum::identity(n_t)};
    }

    ChannelScenario ChannelScenario::semi_rx(int n_t, EigenSpectrum r)
    {
        return {Model::SemiRx, EigenSpectrum::identity(n_t), std::move(r), EigenSpectrum::identity(n_t)};
    }

    ChannelScenario ChannelScenario::semi_tx(EigenSpectrum t, int n_r)
    {
        const int n_t = t.size();
        return {Model::SemiTx, std::move(t), EigenSpectrum::identity(n_r), EigenSpectrum::identity(n_t)};
    }

    ChannelScenario ChannelScenario::full(EigenSpectrum t, EigenSpectrum r)
    {
        const int n_t = t.size();
        return {Model::Full, std::move(t), std::move(r), EigenSpectrum::identity(n_t)};
    }

    ChannelScenario ChannelScenario::with_power(EigenSpectrum x) const
    {
        ChannelScenario s = *this;
        s.x_spectrum = std::move(x);
        return s;
    }

    ChannelScenario validate_scenario(const ChannelScenario &scenario, const SystemConfig &cfg)
    {
        ChannelScenario s = scenario;
        if (s.t_spectrum.size() == 0)
            s.t_spectrum = EigenSpectrum::identity(cfg.n_t());
        if (s.r_spectrum.size() == 0)
            s.r_spectrum = EigenSpectrum::identity(cfg.n_r());
        if (s.x_spectrum.size() == 0)
            s.x_spectrum = EigenSpectrum::identity(cfg.n_t());

        if (s.t_spectrum.size() != cfg.n_t())
            throw Error(ErrorCode::DimensionMismatch, "transmit spectrum length differs from n_t");
        if (s.r_spectrum.size() != cfg.n_r())
            throw Error(ErrorCode::DimensionMismatch, "receive spectrum length differs from n_r");
        if (s.x_spectrum.size() != cfg.n_t())
            throw Error(ErrorCode::DimensionMismatch, "input covariance length differs from n_t");
        if (s.x_spectrum.trace() > cfg.n_t() * (1.0 + 1e-9))
            throw Error(ErrorCode::TraceViolation, "input covariance trace exceeds n_t");

        const bool t_id = s.t_spectrum.is_identity();
        const bool r_id = s.r_spectrum.is_identity();
        switch (s.model)
        {
        case Model::Independent:
            if (!t_id || !r_id)
                throw Error(ErrorCode::InvalidArgument, "independent model takes identity spectra");
            break;
        case Model::SemiRx:
            if (!t_id)
                throw Error(ErrorCode::InvalidArgument, "receive-correlated model takes an identity transmit spectrum");
            if (r_id)
                s.model = Model::Independent;
            break;
        case Model::SemiTx:
            if (!r_id)
                throw Error(ErrorCode::InvalidArgument, "transmit-correlated model takes an identity receive spectrum");
            if (t_id)
                s.model = Model::Independent;
            break;
        case Model::Full:
            if (t_id && r_id)
                s.model = Model::Independent;
            else if (t_id)
                s.model = Model::SemiRx;
            else if (r_id)
                s.model = Model::SemiTx;
            break;
        }
        return s;
    }

    std::pair<ChannelScenario, SystemConfig> interchange_normalize(const ChannelScenario &scenario,
                                                                   const SystemConfig &cfg)
    {
        if (!scenario.x_spectrum.is_identity() && scenario.x_spectrum.size() != 0)
            throw Error(ErrorCode::InvalidArgument, "absorb the input covariance before interchanging sides");
        bool swap = false;
        switch (scenario.model)
        {
        case Model::Independent:
        case Model::Full:
            swap = cfg.n_t() < cfg.n_r();
            break;
        case Model::SemiTx:
            swap = true;
            break;
        case Model::SemiRx:
            swap = false;
            break;
        }
        if (!swap)
            return {scenario, cfg};

        ChannelScenario s;
        s.t_spectrum = scenario.r_spectrum;
        s.r_spectrum = scenario.t_spectrum;
        s.x_spectrum = EigenSpectrum::identity(cfg.n_r());
        switch (scenario.model)
        {
        case Model::SemiRx:
            s.model = Model::SemiTx;
            break;
        case Model::SemiTx:
            s.model = Model::SemiRx;
            break;
        default:
            s.model = scenario.model;
        }
        return {s, cfg.swapped()};
    }

    ChannelScenario absorb_power_allocation(const ChannelScenario &scenario)
    {
        if (scenario.x_spectrum.size() == 0 || scenario.x_spectrum.is_identity())
            return scenario;
        const auto &t = scenario.t_spectrum.values();
        const auto &x = scenario.x_spectrum.values();
        if (t.size() != x.size())
            throw Error(ErrorCode::DimensionMismatch, "input covariance length differs from n_t");
        std::vector<double> prod(t.size());
        for (size_t i = 0; i < t.size(); ++i)
            prod[i] = t[i] * x[i];
        std::sort(prod.begin(), prod.end(), std::greater<>());

        ChannelScenario s = scenario;
        s.t_spectrum = EigenSpectrum::effective(std::move(prod));
        s.x_spectrum = EigenSpectrum::identity(static_cast<int>(t.size()));
        if (s.model == Model::Independent)
            s.model = Model::SemiTx;
        else if (s.model == Model::SemiRx)
            s.model = Model::Full;
        return s;
    }

    // ---- OutageResult ------------------------------------------------------

    OutageResult OutageResult::make(double raw, double err, Method method, bool converged)
    {
        if (!std::isfinite(raw))
            throw Error(ErrorCode::NumericalFailure, "non-finite outage value");
        OutageResult r;
        r.raw_value = raw;
        r.err_estimate = std::abs(err);
        r.method = method;
        r.converged = converged;
        r.probability = std::clamp(raw, 0.0, 1.0);
        // An asymptote above 1 at low SNR is a modelling error, not a numerical one.
        if (method == Method::Asymptotic)
            r.err_estimate = std::max(r.err_estimate, std::abs(r.probability - raw));
        if (std::abs(r.probability - raw) > r.err_estimate)
            throw Error(ErrorCode::NumericalFailure,
                        "value " + std::to_string(raw) + " lies outside [0,1] beyond its error estimate");
        r.below_floor = method == Method::Exact && r.probability < exact_probability_floor;
        return r;
    }

    const PermutationTable &PermutationTable::of(int n)
    {
        if (n < 0)
            throw Error(ErrorCode::InvalidArgument, "permutation order must be non-negative");
        if (n > max_permutation_order)
            throw Error(ErrorCode::PermutationBudgetExceeded,
                        "permutation sums are limited to order " + std::to_string(max_permutation_order));
        static std::array<std::unique_ptr<PermutationTable>, max_permutation_order + 1> tables;
        static std::mutex guard;
        std::lock_guard<std::mutex> lock(guard);
        auto &slot = tables[static_cast<size_t>(n)];
        if (!slot)
        {
            auto t = std::make_unique<PermutationTable>();
            std::vector<int> p(static_cast<size_t>(n));
            std::iota(p.begin(), p.end(), 1);
            do
            {
                int inversions = 0;
                for (size_t i = 0; i < p.size(); ++i)
                    for (size_t j = i + 1; j < p.size(); ++j)
                        inversions += p[i] > p[j] ? 1 : 0;
                t->sigma.push_back(p);
                t->sign.push_back(inversions % 2 == 0 ? 1 : -1);
            } while (std::next_permutation(p.begin(), p.end()));
            slot = std::move(t);
        }
        return *slot;
    }

} // namespace mimo
