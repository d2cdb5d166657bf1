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

#include "mimo/mellin_engine.hpp"
#include "mimo/parallel.hpp"
#include "mimo/special_functions.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace mimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        // Panels per parallel chunk; fixed so the reduction order never changes.
        constexpr std::size_t panels_per_chunk = 4;

        struct KahanSum
        {
            double sum = 0.0;
            double comp = 0.0;
            void add(double v)
            {
                const double y = v - comp;
                const double t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        };

        // Panel layout on t >= 0: width grows like t away from the pole of
        // 1/s near the origin, capped at 3 periods of x^(-it) and at 32.
        struct PanelGrid
        {
            double h_min;
            double h_max;
            int level = 0; // each level halves every width

            double width_at(double t) const
            {
                return std::min(h_max, std::max(h_min, t)) / std::ldexp(1.0, level);
            }

            std::vector<double> edges(double a, double b) const
            {
                std::vector<double> e{a};
                while (e.back() < b)
                {
                    const double next = e.back() + width_at(e.back());
                    e.push_back(next > b - 0.25 * width_at(next) ? b : next);
                }
                return e;
            }
        };

        struct PanelSum
        {
            double value = 0.0;
            double coarse = 0.0; // embedded Gauss rule, Kronrod passes only
            double l1 = 0.0;     // (1/pi) int |Re integrand|, scale of the rounding noise
        };

        // 41-point Kronrod extension of the 20-point Gauss rule on [-1, 1];
        // gauss_w is zero at the added nodes.
        struct KronrodRule
        {
            static constexpr int size = 41;
            std::array<double, size> x{}, kronrod_w{}, gauss_w{};
            KronrodRule()
            {
                using kr = boost::math::quadrature::gauss_kronrod<double, size>;
                using gl = boost::math::quadrature::gauss<double, GaussLegendre::order>;
                const auto &ax = kr::abscissa();
                const auto &kw = kr::weights();
                const auto &gx = gl::abscissa();
                const auto &gw = gl::weights();
                const int half = size / 2;
                for (int i = 0; i <= half; ++i)
                {
                    const auto ii = static_cast<std::size_t>(i);
                    double g = 0.0;
                    for (std::size_t j = 0; j < gx.size(); ++j)
                        if (std::abs(gx[j] - ax[ii]) < 1e-14)
                            g = gw[j];
                    for (int sign : {-1, 1})
                    {
                        const auto k = static_cast<std::size_t>(half + sign * i);
                        x[k] = sign * ax[ii];
                        kronrod_w[k] = kw[ii];
                        gauss_w[k] = g;
                    }
                }
            }
        };

        const KronrodRule &kronrod_rule()
        {
            static const KronrodRule rule;
            return rule;
        }

        // (1/pi) Re int_a^b integrand dt, panel by panel. With kronrod the
        // embedded Gauss sum comes along for the error estimate.
        PanelSum integrate_panels(const PhiFunction &phi_at, double x, double c, double a, double b,
                                  const PanelGrid &grid, long &evaluations, bool kronrod = false)
        {
            const std::vector<double> e = grid.edges(a, b);
            const std::size_t panels = e.size() - 1;
            const auto &kr = kronrod_rule();
            const auto &gx = GaussLegendre::nodes();
            const auto &gw = GaussLegendre::weights();
            const int order = kronrod ? KronrodRule::size : GaussLegendre::order;
            const double *nodes = kronrod ? kr.x.data() : gx.data();
            const double *weights = kronrod ? kr.kronrod_w.data() : gw.data();

            const std::size_t chunks = (panels + panels_per_chunk - 1) / panels_per_chunk;
            std::vector<double> partial(chunks, 0.0), partial_coarse(chunks, 0.0), partial_abs(chunks, 0.0);
            parallel_chunks(panels, panels_per_chunk, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                KahanSum acc, acc_coarse;
                double acc_abs = 0.0;
                for (std::size_t p = begin; p < end; ++p)
                {
                    const double mid = 0.5 * (e[p] + e[p + 1]);
                    const double half = 0.5 * (e[p + 1] - e[p]);
                    double part = 0.0;
                    double part_coarse = 0.0;
                    double part_abs = 0.0;
                    for (int j = 0; j < order; ++j)
                    {
                        const auto jj = static_cast<std::size_t>(j);
                        const double f = mellin_integrand(phi_at, x, c, mid + half * nodes[jj]).real();
                        const double v = weights[jj] * f;
                        part += v;
                        part_abs += std::abs(v);
                        if (kronrod)
                            part_coarse += kr.gauss_w[jj] * f;
                    }
                    acc.add(part * half);
                    acc_coarse.add(part_coarse * half);
                    acc_abs += part_abs * half;
                }
                partial[chunk] = acc.sum;
                partial_coarse[chunk] = acc_coarse.sum;
                partial_abs[chunk] = acc_abs;
            });
            evaluations += static_cast<long>(panels) * order;
            KahanSum total, total_coarse;
            double total_abs = 0.0;
            for (std::size_t k = 0; k < chunks; ++k)
            {
                total.add(partial[k]);
                total_coarse.add(partial_coarse[k]);
                total_abs += partial_abs[k];
            }
            return {total.sum / pi, total_coarse.sum / pi, total_abs / pi};
        }

        struct TailEstimate
        {
            double correction = 0.0;
            double err = 0.0;
        };

        // int_T^inf Re[e^{-i w t} q(t)] dt / pi with q smooth and slowly varying:
        // e^{-i w T} sum_k q^(k)(T) / (i w)^(k+1), k <= 3, by repeated integration
        // by parts. Derivatives from a five-point stencil.
        TailEstimate tail_beyond(const PhiFunction &phi_at, double x, double c, double T, long &evaluations)
        {
            const double omega = std::log(x);
            const cplx I(0.0, 1.0);
            auto q = [&](double t) {
                const cplx s(c, t);
                return std::exp(-c * omega) * phi_at(s + 1.0) / (-s);
            };
            const double d = T / 16.0;
            const cplx qm2 = q(T - 2.0 * d), qm1 = q(T - d), q0 = q(T), qp1 = q(T + d), qp2 = q(T + 2.0 * d);
            evaluations += 5;

            TailEstimate est;
            const double aw = std::abs(omega);
            if (aw * T < 6.0)
            {
                // expansion unusable; bound the tail by the decaying envelope
                est.err = std::abs(q0) * T / pi;
                return est;
            }
            const cplx q1 = (-qp2 + 8.0 * qp1 - 8.0 * qm1 + qm2) / (12.0 * d);
            const cplx q2 = (-qp2 + 16.0 * qp1 - 30.0 * q0 + 16.0 * qm1 - qm2) / (12.0 * d * d);
            const cplx q3 = (qp2 - 2.0 * qp1 + 2.0 * qm1 - qm2) / (2.0 * d * d * d);
            const cplx q4 = (qp2 - 4.0 * qp1 + 6.0 * q0 - 4.0 * qm1 + qm2) / (d * d * d * d);
            const cplx iw = I * omega;
            const cplx phase = std::exp(-I * omega * T);
            const cplx series = phase * (q0 + (q1 + (q2 + q3 / iw) / iw) / iw) / iw;
            est.correction = series.real() / pi;
            // first omitted term, plus the stencil error of q3 with q5 ~ 5 q4 / T
            const double a4 = std::abs(q4);
            // x4: the truncated series is asymptotic, not convergent
            est.err = 4.0 * (a4 / std::pow(aw, 5) + d * d / 4.0 * (5.0 * a4 / T) / std::pow(aw, 4)) / pi;
            return est;
        }
    } // namespace

    cplx mellin_integrand(const PhiFunction &phi_at, double x, double c, double t)
    {
        const cplx s(c, t);
        return std::exp(-s * std::log(x)) / (-s) * phi_at(s + 1.0);
    }

    double conjugate_symmetry_defect(const PhiFunction &phi_at, double x, double c, const std::vector<double> &ts)
    {
        double worst = 0.0;
        for (double t : ts)
        {
            const cplx up = mellin_integrand(phi_at, x, c, t);
            const cplx down = mellin_integrand(phi_at, x, c, -t);
            const double scale = std::abs(up);
            if (scale > 0.0)
                worst = std::max(worst, std::abs(down - std::conj(up)) / scale);
        }
        return worst;
    }

    MellinResult inverse_mellin_cdf(const PhiFunction &phi_at, double x, const MellinContour &contour,
                                    const MellinPolicy &policy)
    {
        if (!(x > 0.0))
            throw Error(ErrorCode::InvalidArgument, "inverse Mellin CDF needs x > 0");
        if (!(contour.c < 0.0))
            throw Error(ErrorCode::InvalidArgument, "contour abscissa must be negative");
        if (!(contour.half_height > 0.0) || contour.nodes < GaussLegendre::order)
            throw Error(ErrorCode::InvalidArgument, "contour height and node count must be positive");

        MellinResult res;
        const double c = contour.c;
        double T = contour.half_height;
        const double omega = std::abs(std::log(x));
        PanelGrid grid;
        grid.h_min = std::max(0.25, 0.5 * (std::abs(c) + 0.5));
        const double period_cap = std::min(32.0, omega > 0.0 ? 3.0 * 2.0 * pi / omega : 8.0);
        // honour the requested first-round node count as an upper bound on width
        grid.h_max = std::min(period_cap, std::max(grid.h_min, T * GaussLegendre::order / contour.nodes));
        auto tol = [&](double v) { return std::max(policy.rel_tol * std::abs(v), policy.abs_tol); };

        // node density on [0, T]: the Kronrod sum is accepted once the
        // embedded Gauss sum agrees with it
        PanelSum first = integrate_panels(phi_at, x, c, 0.0, T, grid, res.evaluations, true);
        double density_gap = std::abs(first.value - first.coarse);
        for (int k = 1;
             k < policy.max_density_doublings &&
             density_gap > std::max(tol(first.value), 1024.0 * std::numeric_limits<double>::epsilon() * first.l1);
             ++k)
        {
            ++grid.level;
            first = integrate_panels(phi_at, x, c, 0.0, T, grid, res.evaluations, true);
            density_gap = std::abs(first.value - first.coarse);
        }
        double body = first.value;
        double l1 = first.l1;

        // cancellation in phi and in the oscillatory sum; phi itself is a
        // signed permutation sum, hence the generous factor
        auto noise = [&] { return 1024.0 * std::numeric_limits<double>::epsilon() * l1; };

        TailEstimate tail = tail_beyond(phi_at, x, c, T, res.evaluations);
        double value = body + tail.correction;
        double err = density_gap + tail.err + noise();
        res.rounds.push_back({T, value, err});

        // beyond the first height only the oscillation limits the width
        PanelGrid far = grid;
        far.h_max = std::max(grid.h_max, period_cap);
        bool converged = false;
        while (2.0 * T <= policy.max_half_height)
        {
            const PanelSum ext = integrate_panels(phi_at, x, c, T, 2.0 * T, far, res.evaluations);
            body += ext.value;
            l1 += ext.l1;
            T *= 2.0;
            tail = tail_beyond(phi_at, x, c, T, res.evaluations);
            const double next = body + tail.correction;
            const double delta = std::abs(next - value);
            value = next;
            // the previous round's tail error bounds most of delta, so the
            // current tail error is the honest estimate once both are small
            err = density_gap + tail.err + noise();
            res.rounds.push_back({T, value, err});
            if (delta <= std::max(tol(value), noise()) + res.rounds[res.rounds.size() - 2].err &&
                tail.err <= std::max(tol(value), noise()))
            {
                // the tail estimate can be optimistic; never claim better
                // than the tolerance the acceptance test actually checked
                err = std::max(err, std::min(delta, tol(value)));
                converged = true;
                break;
            }
            err = std::max(err, delta);
        }

        res.value = value;
        res.err = err;
        res.converged = converged && density_gap <= std::max(tol(value), noise());
        res.l1 = l1;
        res.half_height = T;
        res.panel_width = far.width_at(T);
        return res;
    }

    MellinContour choose_contour(Model model, const SystemConfig &cfg, ContourPurpose purpose)
    {
        MellinContour k;
        if (purpose == ContourPurpose::Exact)
        {
            k.c = -0.5;
        }
        else
        {
            const int nt = cfg.n_max();
            const int n = cfg.n_min();
            const int tau = cfg.tau();
            // every kernel pole lies in [0, n_t + n_r - 1]
            double bound = -static_cast<double>(nt + n - 1);
            switch (model)
            {
            case Model::Independent:
                break;
            case Model::SemiRx:
            case Model::SemiTx:
                bound = std::min(bound, (0.5 * n + tau + 1.0) * (n - 1) - static_cast<double>(nt * n));
                break;
            case Model::Full:
                bound = std::min(bound, -static_cast<double>(nt * n) + 0.5 * n * (n - 1));
                break;
            }
            k.c = bound - 0.5;
        }
        k.half_height = 40.0;
        // 20-node panels no wider than 16 / (|c| + 1) far from the origin
        const double panels = std::ceil(k.half_height * (std::abs(k.c) + 1.0) / 16.0);
        k.nodes = static_cast<int>(panels) * GaussLegendre::order;
        return k;
    }

} // namespace mimo
