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

#ifndef MIMO_RESIDUE_KERNEL_HPP
#define MIMO_RESIDUE_KERNEL_HPP

#include "mimo/core_model.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace mimo
{
    // coeff * x^t * (ln x)^k
    struct ResidueTerm
    {
        int t;
        int k;
        double coeff;
    };

    // Sum of residues of a rational kernel times x^s, as a polynomial in x
    // and ln x. Coefficients are kept exactly; terms() holds their rounded
    // values, sorted by (t, k) with duplicates merged.
    class ResiduePolynomial
    {
    public:
        struct Exact;

        // The zero polynomial.
        ResiduePolynomial();

        const std::vector<ResidueTerm> &terms() const noexcept { return terms_; }
        bool empty() const noexcept { return terms_.empty(); }

        // Exact coefficient of x^t (ln x)^k as "p/q", "0" when absent.
        std::string exact_coefficient(int t, int k) const;

        // Exact equality of all coefficients.
        bool operator==(const ResiduePolynomial &other) const;

    private:
        friend struct ResidueAccess;
        explicit ResiduePolynomial(std::shared_ptr<const Exact> exact);
        std::shared_ptr<const Exact> exact_;
        std::vector<ResidueTerm> terms_;
    };

    // Integer poles (location, multiplicity) of 1 / prod (s - p)^m.
    using PoleSet = std::vector<std::pair<int, int>>;

    // sum of all residues of x^s / prod (s - p)^m.
    ResiduePolynomial residue_sum(const PoleSet &poles);

    // Kernel of the independent asymptote for one permutation:
    // x^s / (s prod_i prod_{t=1}^{tau+i+sigma_i} (s - t)). sigma is 1-based.
    ResiduePolynomial g_sigma(const std::vector<int> &sigma, int tau, int n_r);

    // x^s / s * prod_i Gamma(s - n_t - i - n_i + 1) / Gamma(s - i + 1), which is
    // x^s / (s prod_i prod_{q=i}^{i+n_t+n_i-1} (s - q)). Needs n_t >= n_r.
    ResiduePolynomial g_n_full(const std::vector<int> &n, const SystemConfig &cfg);

    // sum coeff x^t (ln x)^k, x >= 1, evaluated from the exact coefficients
    // in extended precision.
    double evaluate(const ResiduePolynomial &poly, double x);

    // sum_sigma sgn(sigma) prod_i Gamma(tau+i+sigma_i) g_sigma / prod_i (n_r-i)!(n_t-i)!
    // combined exactly. Needs n_t >= n_r.
    ResiduePolynomial permutation_kernel(const SystemConfig &cfg);

    // The permutation route to g_0(2^R); compare with evaluate(g_n_full(0), 2^R).
    double g0_via_permutation_identity(const SystemConfig &cfg);

} // namespace mimo

#endif
