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

#ifndef MIMO_CORE_MODEL_HPP
#define MIMO_CORE_MODEL_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mimo
{
    using cplx = std::complex<double>;

    enum class ErrorCode
    {
        InvalidArgument,
        NonDistinctSpectrum,
        TraceViolation,
        DimensionMismatch,
        PoleAtNonpositiveInteger,
        InvalidDegenerateParameters,
        EmptyPoleSet,
        PermutationBudgetExceeded,
        LengthMismatch,
        NumericalFailure
    };

    std::string_view to_string(ErrorCode code);

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorCode code, const std::string &what);
        ErrorCode code() const noexcept { return code_; }

    private:
        ErrorCode code_;
    };

    enum class Model
    {
        Independent,
        SemiRx,
        SemiTx,
        Full
    };

    enum class Method
    {
        Exact,
        Asymptotic,
        MonteCarlo
    };

    std::string_view to_string(Model m);
    std::string_view to_string(Method m);

    // Largest min(n_t, n_r) accepted by the permutation-sum routes (720 terms).
    inline constexpr int max_permutation_order = 6;

    // Antenna counts, target rate (bits/s/Hz) and transmit SNR.
    class SystemConfig
    {
    public:
        SystemConfig(int n_t, int n_r, double rate, double snr_db);

        // Same configuration built from a linear SNR.
        static SystemConfig from_linear(int n_t, int n_r, double rate, double rho);

        int n_t() const noexcept { return n_t_; }
        int n_r() const noexcept { return n_r_; }
        double rate() const noexcept { return rate_; }
        double snr_db() const noexcept { return snr_db_; }
        double rho() const noexcept { return rho_; }

        // tau = |n_t - n_r| - 1, equals -1 for square arrays.
        int tau() const noexcept { return (n_t_ > n_r_ ? n_t_ - n_r_ : n_r_ - n_t_) - 1; }
        int n_min() const noexcept { return n_t_ < n_r_ ? n_t_ : n_r_; }
        int n_max() const noexcept { return n_t_ < n_r_ ? n_r_ : n_t_; }

        // Outage threshold 2^R on G = det(I + rho H H^H).
        double threshold() const;

        SystemConfig with_snr_db(double snr_db) const;
        SystemConfig with_rate(double rate) const;
        SystemConfig swapped() const;

    private:
        SystemConfig(int n_t, int n_r, double rate, double snr_db, double rho);
        int n_t_;
        int n_r_;
        double rate_;
        double snr_db_;
        double rho_;
    };

    // Eigenvalues of a correlation or input covariance matrix, descending.
    class EigenSpectrum
    {
    public:
        enum class Kind
        {
            Identity,    // explicit flag, all ones
            Correlation, // strictly decreasing, trace == n
            Power,       // input covariance: repeats allowed, trace <= n
            Effective    // repeats allowed, trace unconstrained
        };

        EigenSpectrum() = default;

        static EigenSpectrum identity(int n);

        // Correlation spectrum. Exact all-ones input yields the identity flag.
        // With renormalize the values are rescaled to trace n before checks.
        static EigenSpectrum correlation(std::vector<double> values, bool renormalize = false);

        static EigenSpectrum power(std::vector<double> values, bool renormalize = false);

        // Descending positive values without a trace constraint, e.g. the
        // spectrum of R_t^{1/2} R_x R_t^{1/2}. Exact evaluators still demand
        // distinct values.
        static EigenSpectrum effective(std::vector<double> values);

        const std::vector<double> &values() const noexcept { return values_; }
        int size() const noexcept { return static_cast<int>(values_.size()); }
        Kind kind() const noexcept { return kind_; }
        bool is_identity() const noexcept { return kind_ == Kind::Identity; }
        double operator[](int i) const { return values_[static_cast<size_t>(i)]; }

        double determinant() const;
        double trace() const;
        std::vector<double> reciprocals() const;

    private:
        EigenSpectrum(std::vector<double> v, Kind k) : values_(std::move(v)), kind_(k) {}
        std::vector<double> values_;
        Kind kind_ = Kind::Identity;
    };

    struct ChannelScenario
    {
        Model model = Model::Independent;
        EigenSpectrum t_spectrum;
        EigenSpectrum r_spectrum;
        EigenSpectrum x_spectrum;

        static ChannelScenario independent(int n_t, int n_r);
        static ChannelScenario semi_rx(int n_t, EigenSpectrum r);
        static ChannelScenario semi_tx(EigenSpectrum t, int n_r);
        static ChannelScenario full(EigenSpectrum t, EigenSpectrum r);
        ChannelScenario with_power(EigenSpectrum x) const;
    };

    // Checks dimensions and spectra against cfg and makes the model tag
    // consistent with the identity flags (downgrade only).
    ChannelScenario validate_scenario(const ChannelScenario &scenario, const SystemConfig &cfg);

    // Swaps transmit and receive sides so that independent and full models
    // have n_t >= n_r and semi-correlated models are receive-side.
    std::pair<ChannelScenario, SystemConfig> interchange_normalize(const ChannelScenario &scenario,
                                                                   const SystemConfig &cfg);

    // Replaces t by the elementwise product t*x (aligned diagonal R_t, R_x)
    // and resets x to identity. Model is upgraded when t was identity.
    ChannelScenario absorb_power_allocation(const ChannelScenario &scenario);

    struct OutageResult
    {
        double probability = 0.0;
        Method method = Method::Exact;
        double err_estimate = 0.0;
        double raw_value = 0.0;
        bool converged = true;
        bool below_floor = false;

        // Clamps raw into [0,1]; throws NumericalFailure when the clamp moves
        // the value by more than err.
        static OutageResult make(double raw, double err, Method method, bool converged = true);
    };

    // All permutations of {1..n} in lexicographic order with their signs.
    struct PermutationTable
    {
        std::vector<std::vector<int>> sigma; // 1-based entries
        std::vector<int> sign;

        std::size_t size() const noexcept { return sigma.size(); }

        // Shared immutable table; throws PermutationBudgetExceeded above
        // max_permutation_order.
        static const PermutationTable &of(int n);
    };

    // Values below this are flagged as below the exact evaluator's floor.
    inline constexpr double exact_probability_floor = 1e-13;

} // namespace mimo

#endif
