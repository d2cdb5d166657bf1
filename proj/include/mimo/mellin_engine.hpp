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

#ifndef MIMO_MELLIN_ENGINE_HPP
#define MIMO_MELLIN_ENGINE_HPP

#include "mimo/core_model.hpp"

#include <functional>
#include <vector>

namespace mimo
{
    // Vertical line Re(s) = c, integrated over |Im s| <= half_height.
    // nodes bounds the panel width from above: width <= 20 half_height / nodes.
    struct MellinContour
    {
        double c = -0.5;
        double half_height = 40.0;
        int nodes = 160;
    };

    struct MellinPolicy
    {
        double rel_tol = 1e-10;
        double abs_tol = 1e-14;
        double max_half_height = 5120.0;
        int max_density_doublings = 6;
    };

    struct MellinRound
    {
        double half_height;
        double value;
        double err;
    };

    struct MellinResult
    {
        double value = 0.0;
        double err = 0.0;
        bool converged = false;
        double half_height = 0.0;
        double panel_width = 0.0;
        long evaluations = 0;
        // (1/pi) int |Re integrand|; a relative error e in phi moves the
        // value by about e * l1
        double l1 = 0.0;
        std::vector<MellinRound> rounds;
    };

    // phi_at(u) is the Mellin transform E[G^(u-1)].
    using PhiFunction = std::function<cplx(cplx)>;

    // F(x) = (1/2 pi i) int_{c-i inf}^{c+i inf} x^(-s) / (-s) phi(s+1) ds, c < 0.
    // Conjugate symmetry folds the line onto t >= 0. The tail beyond the
    // truncation height is added from an integration-by-parts expansion.
    MellinResult inverse_mellin_cdf(const PhiFunction &phi_at, double x, const MellinContour &contour,
                                    const MellinPolicy &policy = {});

    // The integrand x^(-s) / (-s) phi(s+1) at s = c + i t.
    cplx mellin_integrand(const PhiFunction &phi_at, double x, double c, double t);

    // max over ts of |f(c - i t) - conj f(c + i t)| / |f(c + i t)|.
    double conjugate_symmetry_defect(const PhiFunction &phi_at, double x, double c, const std::vector<double> &ts);

    enum class ContourPurpose
    {
        Exact,
        AsymptoticCheck
    };

    // Exact: c = -0.5. AsymptoticCheck: the abscissa bound of the residue
    // expansion for the model minus 0.5, so that every pole of the kernel
    // lies on the right of the line.
    MellinContour choose_contour(Model model, const SystemConfig &cfg, ContourPurpose purpose);

} // namespace mimo

#endif
