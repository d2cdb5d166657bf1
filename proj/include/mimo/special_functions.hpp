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

#ifndef MIMO_SPECIAL_FUNCTIONS_HPP
#define MIMO_SPECIAL_FUNCTIONS_HPP

#include "mimo/core_model.hpp"

#include <array>
#include <vector>

namespace mimo
{
    // Principal branch of log Gamma(z), analytic off the negative real axis.
    // Throws PoleAtNonpositiveInteger.
    cplx ln_gamma(cplx z);

    cplx gamma(cplx z);

    // (x)_n = x (x+1) ... (x+n-1)
    cplx pochhammer(cplx x, int n);

    struct PsiResult
    {
        cplx value;
        double err = 0.0; // gap between the last two refinement rounds
        int nodes = 0;
        bool converged = true;
    };

    // Tricomi Psi(a, b; z) = U(a, b, z) from its Laplace-type integral,
    // a > 0, z > 0, complex b. For |Im b| large the integration ray is
    // rotated off the real axis (Cauchy), which removes the oscillation.
    PsiResult tricomi_psi_ex(double a, cplx b, double z);

    struct PsiArgs
    {
        double a;
        double z;
    };

    // Psi(a_k, a_k + 1 + p; z_k) for every member, sharing one set of nodes.
    std::vector<PsiResult> tricomi_psi_family(cplx p, const std::vector<PsiArgs> &members);

    // Value only; non-convergence is reported through tricomi_psi_ex.
    cplx tricomi_psi(double a, cplx b, double z);

    // Xi(a, alpha, A, phi)(s) = A^(phi + a + alpha s - 1) Psi(phi, phi + a + alpha s; A),
    // and Gamma(a - s) for A = 0 (which requires alpha = -1, phi = 1).
    cplx xi(double a, double alpha, double big_a, double phi, cplx s);

    // 20-point Gauss-Legendre rule on [-1, 1].
    struct GaussLegendre
    {
        static constexpr int order = 20;
        static const std::array<double, order> &nodes();
        static const std::array<double, order> &weights();
    };

} // namespace mimo

#endif
