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

#ifndef MIMO_MONTE_CARLO_HPP
#define MIMO_MONTE_CARLO_HPP

#include "mimo/core_model.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>

namespace mimo
{
    using CMatrix = Eigen::MatrixXcd;

    // Philox4x32-10 counter-based generator (Salmon et al.).
    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

    // Stream of standard complex Gaussians for one sample index. Draw k of
    // sample n under a seed is a pure function of (seed, n, k).
    class McStream
    {
    public:
        McStream(std::uint64_t seed, std::uint64_t sample) : seed_(seed), sample_(sample) {}

        // CN(0, 1): independent real and imaginary parts with variance 1/2 (Box-Muller).
        cplx next_cn();

    private:
        std::uint64_t seed_;
        std::uint64_t sample_;
        std::uint32_t draw_ = 0;
    };

    // H = diag(sqrt r) H_w diag(sqrt t), n_r x n_t.
    CMatrix sample_channel(const ChannelScenario &scenario, const SystemConfig &cfg, McStream &stream);

    // log2 det(I + rho H diag(x) H^H) by Cholesky; an empty x means identity.
    double mutual_information(const CMatrix &h, double rho, const EigenSpectrum &x = {});

    // log2 det(I + rho H R_x H^H) for a Hermitian input covariance.
    double mutual_information(const CMatrix &h, double rho, const CMatrix &rx);

    struct McEstimate
    {
        double p_hat = 0.0;
        double std_err = 0.0; // sqrt(p (1 - p) / n)
        std::uint64_t n_samples = 0;
        std::uint64_t seed = 0;
    };

    inline constexpr std::uint64_t default_mc_samples = 1000000;

    // Fraction of draws with mutual information below the rate. Independent
    // of the worker count.
    McEstimate estimate_outage(const ChannelScenario &scenario, const SystemConfig &cfg, std::uint64_t n_samples,
                               std::uint64_t seed);

    // Hermitian positive-definite correlation matrices, not necessarily diagonal.
    struct CorrelationMatrices
    {
        CMatrix rt; // n_t x n_t
        CMatrix rr; // n_r x n_r
        CMatrix rx; // n_t x n_t input covariance
    };

    McEstimate estimate_outage(const CorrelationMatrices &m, const SystemConfig &cfg, std::uint64_t n_samples,
                               std::uint64_t seed);

    // Eigenvalues of R_t^(1/2) R_x R_t^(1/2), descending. For spectra this
    // assumes aligned eigenvectors (the elementwise product).
    EigenSpectrum effective_tx_correlation(const EigenSpectrum &t, const EigenSpectrum &x);
    EigenSpectrum effective_tx_correlation(const CMatrix &rt, const CMatrix &rx);

    // Hermitian square root of a positive semi-definite matrix.
    CMatrix hermitian_sqrt(const CMatrix &m);

} // namespace mimo

#endif
