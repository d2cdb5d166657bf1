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

#include "mimo/outage_exact.hpp"
#include "mimo/special_functions.hpp"
#include "quad_precision.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace mimo
{
    namespace
    {
        struct KahanComplex
        {
            cplx sum = 0.0;
            cplx comp = 0.0;
            void add(cplx v)
            {
                const cplx y = v - comp;
                const cplx t = sum + y;
                comp = (t - sum) - y;
                sum = t;
            }
        };

        struct DoubleDouble
        {
            double hi = 0.0;
            double lo = 0.0;
            void add(double v)
            {
                const double s = hi + v;
                const double bb = s - hi;
                double e = (hi - (s - bb)) + (v - bb);
                e += lo;
                hi = s + e;
                lo = e - (hi - s);
            }
            double value() const { return hi + lo; }
        };

        // sum_sigma sgn(sigma) term(sigma) over S_n, largest terms first.
        cplx permutation_sum(int n, const std::function<cplx(const std::vector<int> &)> &term, SumMode mode)
        {
            const auto &perms = PermutationTable::of(n);
            std::vector<cplx> terms(perms.size());
            for (std::size_t k = 0; k < perms.size(); ++k)
                terms[k] = static_cast<double>(perms.sign[k]) * term(perms.sigma[k]);
            std::sort(terms.begin(), terms.end(), [](cplx a, cplx b) { return std::abs(a) > std::abs(b); });
            if (mode == SumMode::DoubleDouble)
            {
                DoubleDouble re, im;
                for (cplx v : terms)
                {
                    re.add(v.real());
                    im.add(v.imag());
                }
                return {re.value(), im.value()};
            }
            KahanComplex acc;
            for (cplx v : terms)
                acc.add(v);
            return acc.sum;
        }

        double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

        // prod_{i<j} (x_j - x_i)
        double vandermonde(const std::vector<double> &x)
        {
            double d = 1.0;
            for (std::size_t i = 0; i < x.size(); ++i)
                for (std::size_t j = i + 1; j < x.size(); ++j)
                    d *= x[j] - x[i];
            return d;
        }

        void require_distinct(const EigenSpectrum &e, const char *what)
        {
            const auto &v = e.values();
            for (std::size_t i = 1; i < v.size(); ++i)
                if (!(v[i - 1] - v[i] > 1e-9 * static_cast<double>(v.size())))
                    throw Error(ErrorCode::NonDistinctSpectrum, std::string(what) + " spectrum has repeated eigenvalues");
        }

        void check_finite(cplx s)
        {
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw Error(ErrorCode::InvalidArgument, "Mellin variable must be finite");
        }

        // Psi values over an (a, z) grid sharing the second-parameter offset p.
        struct PsiGrid
        {
            std::vector<double> as;
            std::vector<double> zs;
            std::vector<cplx> v; // v[ia * zs.size() + iz]

            PsiGrid(cplx p, std::vector<double> a_values, std::vector<double> z_values)
                : as(std::move(a_values)), zs(std::move(z_values))
            {
                std::vector<PsiArgs> members;
                for (double a : as)
                    for (double z : zs)
                        members.push_back({a, z});
                const auto res = tricomi_psi_family(p, members);
                v.reserve(res.size());
                for (const auto &r : res)
                    v.push_back(r.value);
            }
            cplx at(std::size_t ia, std::size_t iz) const { return v[ia * zs.size() + iz]; }
        };

        // phi(1) = E[G^0] = 1 for every model; the deviation is the self-test
        // run before each CDF. A relative error e in phi moves the CDF by
        // about e * l1, which joins the error estimate.
        struct ContourValue
        {
            double value;
            double err;
            bool converged;
        };

        ContourValue run_contour(const PhiFunction &phi, const SystemConfig &cfg, Model model, const ExactOptions &opt)
        {
            const double dev = std::abs(phi(cplx(1.0, 0.0)) - 1.0);
            const MellinContour contour = choose_contour(model, cfg, ContourPurpose::Exact);
            const MellinResult res = inverse_mellin_cdf(phi, cfg.threshold(), contour, opt.policy);
            return {res.value, res.err + dev * res.l1, res.converged && dev <= self_test_tolerance};
        }

        OutageResult finish(const ContourValue &v) { return OutageResult::make(v.value, v.err, Method::Exact, v.converged); }
    } // namespace

    cplx phi_independent(cplx s, const SystemConfig &cfg, SumMode mode)
    {
        check_finite(s);
        if (cfg.n_t() < cfg.n_r())
            throw Error(ErrorCode::InvalidArgument, "phi_independent needs n_t >= n_r; interchange first");
        const int nt = cfg.n_t();
        const int nr = cfg.n_r();
        const int tau = cfg.tau();
        const double z = 1.0 / cfg.rho();

        // a = tau + i + j ranges over tau+2 .. tau+2 n_r
        std::vector<double> as;
        for (int a = tau + 2; a <= tau + 2 * nr; ++a)
            as.push_back(a);
        const PsiGrid psi(s - 1.0, as, {z});
        // Gamma(a) Psi(a, s+a; 1/rho) rho^(-a); the rho powers sum to n_t n_r for every sigma
        std::vector<cplx> factor(as.size());
        for (std::size_t k = 0; k < as.size(); ++k)
            factor[k] = std::exp(std::lgamma(as[k]) + as[k] * std::log(z)) * psi.at(k, 0);

        const cplx sum = permutation_sum(
            nr,
            [&](const std::vector<int> &sigma) {
                cplx prod = 1.0;
                for (int i = 1; i <= nr; ++i)
                    prod *= factor[static_cast<std::size_t>(i + sigma[static_cast<std::size_t>(i - 1)] - 2)];
                return prod;
            },
            mode);
        double denom = 1.0;
        for (int i = 1; i <= nr; ++i)
            denom *= factorial(nr - i) * factorial(nt - i);
        return sum / denom;
    }

    cplx phi_semi(cplx s, const SystemConfig &cfg, const EigenSpectrum &r, SumMode mode)
    {
        check_finite(s);
        const int nt = cfg.n_t();
        const int nr = cfg.n_r();
        if (r.size() != nr)
            throw Error(ErrorCode::DimensionMismatch, "receive spectrum size must equal n_r");
        require_distinct(r, "receive");
        const double rho = cfg.rho();
        const auto &rv = r.values();
        std::vector<double> zs(rv.size());
        for (std::size_t j = 0; j < rv.size(); ++j)
            zs[j] = 1.0 / (rho * rv[j]);

        if (nt >= nr)
        {
            const int tau = cfg.tau();
            std::vector<double> as;
            for (int i = 1; i <= nr; ++i)
                as.push_back(i + tau + 1);
            const PsiGrid psi(s - 1.0, as, zs);
            // Gamma(a_i) Psi(a_i, s+a_i; 1/(rho r_j)) rho^(-a_i)
            std::vector<cplx> f(static_cast<std::size_t>(nr * nr));
            for (std::size_t i = 0; i < as.size(); ++i)
                for (std::size_t j = 0; j < zs.size(); ++j)
                    f[i * zs.size() + j] = std::exp(std::lgamma(as[i]) - as[i] * std::log(rho)) * psi.at(i, j);
            const cplx sum = permutation_sum(
                nr,
                [&](const std::vector<int> &sigma) {
                    cplx prod = 1.0;
                    for (std::size_t i = 0; i < as.size(); ++i)
                        prod *= f[i * zs.size() + static_cast<std::size_t>(sigma[i] - 1)];
                    return prod;
                },
                mode);
            const double sign = (nr * (nr - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            double denom = std::pow(r.determinant(), nt) * vandermonde(r.reciprocals());
            for (int j = 1; j <= nr; ++j)
                denom *= factorial(nt - j);
            return sign * sum / denom;
        }

        // n_t < n_r: n_t non-zero eigenvalues
        std::vector<double> as;
        for (int i = 1; i <= nt; ++i)
            as.push_back(i);
        const PsiGrid psi(s - 1.0, as, zs);
        std::vector<cplx> f(static_cast<std::size_t>(nr * nr));
        for (int i = 1; i <= nr; ++i)
            for (int j = 1; j <= nr; ++j)
            {
                const auto ii = static_cast<std::size_t>(i - 1);
                const auto jj = static_cast<std::size_t>(j - 1);
                f[ii * rv.size() + jj] = i <= nt ? std::pow(rv[jj], nr - nt - 1) * std::pow(rho, -i) * psi.at(ii, jj)
                                                 : cplx(std::pow(rv[jj], i - nt - 1));
            }
        const cplx sum = permutation_sum(
            nr,
            [&](const std::vector<int> &sigma) {
                cplx prod = 1.0;
                for (std::size_t i = 0; i < rv.size(); ++i)
                    prod *= f[i * rv.size() + static_cast<std::size_t>(sigma[i] - 1)];
                return prod;
            },
            mode);
        const double sign = (nt * (nr - nt)) % 2 == 0 ? 1.0 : -1.0;
        return sign * sum / vandermonde(rv);
    }

    namespace
    {
        quad::complex quad_pow(quad::complex z, int k)
        {
            quad::complex r(1.0);
            for (int i = 0; i < k; ++i)
                r *= z;
            return r;
        }

        quad::complex full_determinant(const std::vector<quad::complex> &m, int n, SumMode, double * = nullptr)
        {
            const auto &perms = PermutationTable::of(n);
            const auto nn = static_cast<std::size_t>(n);
            quad::complex det(0.0);
            for (std::size_t k = 0; k < perms.size(); ++k)
            {
                quad::complex prod(static_cast<double>(perms.sign[k]));
                for (std::size_t i = 0; i < nn; ++i)
                    prod *= m[i * nn + static_cast<std::size_t>(perms.sigma[k][i] - 1)];
                det += prod;
            }
            return det;
        }

        cplx full_determinant(const std::vector<cplx> &m, int n, SumMode mode, double *abs_sum = nullptr)
        {
            const auto nn = static_cast<std::size_t>(n);
            double total = 0.0;
            const cplx det = permutation_sum(
                n,
                [&](const std::vector<int> &sigma) {
                    cplx prod = 1.0;
                    for (std::size_t i = 0; i < nn; ++i)
                        prod *= m[i * nn + static_cast<std::size_t>(sigma[i] - 1)];
                    total += std::abs(prod);
                    return prod;
                },
                mode);
            if (abs_sum)
                *abs_sum = total;
            return det;
        }

        std::vector<cplx> full_psi(cplx p, const std::vector<double> &z)
        {
            std::vector<PsiArgs> members;
            for (double v : z)
                members.push_back({1.0, v});
            std::vector<cplx> out;
            for (const auto &r : tricomi_psi_family(p, members))
                out.push_back(r.value);
            return out;
        }

        std::vector<quad::complex> full_psi(quad::complex p, const std::vector<quad::real> &z)
        {
            std::vector<quad::PsiArgs> members;
            for (quad::real v : z)
                members.push_back({1.0, v});
            return quad::tricomi_psi_family(p, members);
        }

        cplx to_cplx(cplx v) { return v; }
        cplx to_cplx(const quad::complex &v) { return static_cast<cplx>(v); }
        cplx cpow(cplx z, int k) { return std::pow(z, k); }
        quad::complex cpow(const quad::complex &z, int k) { return quad_pow(z, k); }

        // The entries Psi(1, s+n_r; a_i b_j / rho) share their leading powers
        // of rho, so the determinant cancels roughly rho^(n_r(n_r-1)/2) / V
        // of relative accuracy; Real = binary128 recovers it.
        // bound, when non-null, receives a rounding error estimate for the
        // result: 2 eps times the sum of |terms|. Against binary128 it sits
        // within a factor of ten or so either way on the contour.
        template <class Real, class Complex>
        cplx phi_full_impl(cplx s, const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r,
                           SumMode mode, double *bound = nullptr)
        {
            check_finite(s);
            const int nt = cfg.n_t();
            const int nr = cfg.n_r();
            if (nt < nr)
                throw Error(ErrorCode::InvalidArgument, "phi_full needs n_t >= n_r; interchange first");
            if (t.size() != nt || r.size() != nr)
                throw Error(ErrorCode::DimensionMismatch, "spectrum sizes must equal n_t and n_r");
            require_distinct(t, "transmit");
            require_distinct(r, "receive");
            const Real rho = cfg.rho();
            std::vector<Real> a, b;
            for (double v : r.values())
                a.push_back(Real(1) / Real(v));
            for (double v : t.values())
                b.push_back(Real(1) / Real(v));

            std::vector<Real> z;
            for (Real ai : a)
                for (Real bj : b)
                    z.push_back(ai * bj / rho);
            const auto psi = full_psi(Complex(s) + Complex(static_cast<double>(nr) - 2.0), z);

            // rows i <= n_r: Psi(1, s+n_r; a_i b_j / rho); rows i > n_r: b_j^(n_t-i)
            const auto n = static_cast<std::size_t>(nt);
            std::vector<Complex> m(n * n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                {
                    if (static_cast<int>(i) < nr)
                    {
                        m[i * n + j] = psi[i * n + j];
                        continue;
                    }
                    Real p = 1;
                    for (int k = 0; k < nt - static_cast<int>(i) - 1; ++k)
                        p *= b[j];
                    m[i * n + j] = Complex(p);
                }
            double abs_sum = 0.0;
            const Complex det = full_determinant(m, nt, mode, &abs_sum);

            // rho^(-n_r(n_r+1)/2) prod a_i^n_r prod b_j^n_r / (V(a) V(b))
            Real scale = 1;
            for (int k = 0; k < nr * (nr + 1) / 2; ++k)
                scale /= rho;
            for (const auto *v : {&a, &b})
                for (Real x : *v)
                    for (int k = 0; k < nr; ++k)
                        scale *= x;
            for (const auto *v : {&a, &b})
                for (std::size_t i = 0; i < v->size(); ++i)
                    for (std::size_t j = i + 1; j < v->size(); ++j)
                        scale /= (*v)[j] - (*v)[i];
            if ((nr * (nt - nr)) % 2 != 0)
                scale = -scale;
            Complex poles(1.0);
            for (int i = 1; i <= nr; ++i)
                poles *= cpow(Complex(s) + Complex(static_cast<double>(i - 2)), i - 1);
            const cplx value = to_cplx(Complex(scale) * det / poles);
            if (bound)
                *bound = 2.0 * std::numeric_limits<double>::epsilon() * abs_sum *
                         std::abs(to_cplx(Complex(scale) / poles));
            return value;
        }

        // Upper bounds of the contour sum for which the mixed evaluator
        // budgets: log(1 + 5120) / pi.
        constexpr double height_log_over_pi = 8.54 / 3.141592653589793;
        constexpr double default_auto_target = 1e-14;

        // Weighted rounding bound of a double evaluation on the CDF line
        // u = s - 1: the node contributes about bound x^(-Re u) / |u| / pi
        // per unit height; the factor 1 + |Im u| spreads the budget so that
        // the total stays below target up to the largest contour height.
        double weighted_bound(cplx s, const SystemConfig &cfg, double bound)
        {
            const cplx u = s - 1.0;
            if (u == 0.0)
                return bound; // the self-test point, not on the line
            return bound * std::pow(cfg.threshold(), -u.real()) * (1.0 + std::abs(u.imag())) / std::abs(u) *
                   height_log_over_pi;
        }

        // Double evaluation, repeated in binary128 when its weighted rounding
        // bound exceeds target. worst, when non-null, tracks the largest
        // weighted bound among the nodes kept in double.
        cplx phi_full_mixed(cplx s, const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r,
                            SumMode mode, double target, double *worst)
        {
            double bound = 0.0;
            const cplx v = phi_full_impl<double, cplx>(s, cfg, t, r, mode, &bound);
            const double w = weighted_bound(s, cfg, bound);
            if (!(w > target))
            {
                if (worst)
                    *worst = std::max(*worst, w);
                return v;
            }
            return phi_full_impl<quad::real, quad::complex>(s, cfg, t, r, mode);
        }
    } // namespace

    cplx phi_full(cplx s, const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r, SumMode mode,
                  Precision precision)
    {
        if (precision == Precision::Quad)
            return phi_full_impl<quad::real, quad::complex>(s, cfg, t, r, mode);
        if (precision == Precision::Double)
            return phi_full_impl<double, cplx>(s, cfg, t, r, mode);
        return phi_full_mixed(s, cfg, t, r, mode, default_auto_target, nullptr);
    }

    OutageResult outage_independent(const SystemConfig &cfg, const ExactOptions &opt)
    {
        const SystemConfig c = cfg.n_t() >= cfg.n_r() ? cfg : cfg.swapped();
        const PhiFunction phi = [c, mode = opt.sum_mode](cplx s) { return phi_independent(s, c, mode); };
        return finish(run_contour(phi, c, Model::Independent, opt));
    }

    OutageResult outage_semi(const SystemConfig &cfg, const EigenSpectrum &spectrum, Side side, const ExactOptions &opt)
    {
        if (spectrum.is_identity())
            throw Error(ErrorCode::InvalidArgument, "identity spectrum belongs to the independent model");
        const SystemConfig c = side == Side::Rx ? cfg : cfg.swapped();
        if (spectrum.size() != c.n_r())
            throw Error(ErrorCode::DimensionMismatch, "correlated side spectrum has the wrong size");
        require_distinct(spectrum, "correlation");
        const PhiFunction phi = [c, spectrum, mode = opt.sum_mode](cplx s) { return phi_semi(s, c, spectrum, mode); };
        return finish(run_contour(phi, c, Model::SemiRx, opt));
    }

    OutageResult outage_full(const SystemConfig &cfg, const EigenSpectrum &t, const EigenSpectrum &r,
                             const ExactOptions &opt)
    {
        if (t.is_identity() || r.is_identity())
            throw Error(ErrorCode::InvalidArgument, "identity spectra belong to the independent or semi model");
        const bool swap = cfg.n_t() < cfg.n_r();
        const SystemConfig c = swap ? cfg.swapped() : cfg;
        const EigenSpectrum &tt = swap ? r : t;
        const EigenSpectrum &rr = swap ? t : r;
        if (tt.size() != c.n_t() || rr.size() != c.n_r())
            throw Error(ErrorCode::DimensionMismatch, "spectrum sizes must equal n_t and n_r");
        require_distinct(tt, "transmit");
        require_distinct(rr, "receive");
        // the S_{n_t} expansion is the costly part
        PermutationTable::of(c.n_t());
        // pass 1 in double; the worst weighted rounding bound says whether
        // the determinant lost digits that matter for this probability
        // p <= 1, so no target exceeds cap: a node above it settles the question
        struct Escalate
        {
        };
        const double cap = std::max(opt.policy.rel_tol, opt.policy.abs_tol);
        const bool may_escalate = opt.extended_precision;
        double worst = 0.0;
        const PhiFunction phi = [&c, &tt, &rr, mode = opt.sum_mode, &worst, cap, may_escalate](cplx s) {
            const cplx v = phi_full_mixed(s, c, tt, rr, mode, std::numeric_limits<double>::infinity(), &worst);
            if (may_escalate && worst > cap)
                throw Escalate{};
            return v;
        };
        ContourValue first{0.0, std::numeric_limits<double>::infinity(), false};
        try
        {
            first = run_contour(phi, c, Model::Full, opt);
        }
        catch (const Escalate &)
        {
        }
        const double target =
            std::max(opt.policy.rel_tol * std::max(std::abs(first.value) - worst, 0.0), opt.policy.abs_tol);
        first.err += worst;
        if (worst <= target || !opt.extended_precision)
        {
            first.converged = first.converged && worst <= target;
            return finish(first);
        }
        // pass 2: binary128 wherever a node could move the result by target
        double kept = 0.0;
        const PhiFunction mixed = [&c, &tt, &rr, mode = opt.sum_mode, target, &kept](cplx s) {
            return phi_full_mixed(s, c, tt, rr, mode, target, &kept);
        };
        ContourValue second = run_contour(mixed, c, Model::Full, opt);
        second.err += kept;
        return finish(second);
    }

    PhiFunction phi_for(const ChannelScenario &scenario, const SystemConfig &cfg, SumMode mode, Precision precision)
    {
        ChannelScenario sc = validate_scenario(scenario, cfg);
        if (!sc.x_spectrum.is_identity())
            sc = absorb_power_allocation(sc);
        const auto [n, c] = interchange_normalize(sc, cfg);
        switch (n.model)
        {
        case Model::Independent:
            return [c, mode](cplx s) { return phi_independent(s, c, mode); };
        case Model::SemiRx:
        case Model::SemiTx:
            return [c, r = n.r_spectrum, mode](cplx s) { return phi_semi(s, c, r, mode); };
        case Model::Full:
            return [c, t = n.t_spectrum, r = n.r_spectrum, mode, precision](cplx s) {
                return phi_full(s, c, t, r, mode, precision);
            };
        }
        throw Error(ErrorCode::InvalidArgument, "unknown model");
    }

    OutageResult outage_exact(const ChannelScenario &scenario, const SystemConfig &cfg, const ExactOptions &opt)
    {
        ChannelScenario sc = validate_scenario(scenario, cfg);
        if (!sc.x_spectrum.is_identity())
            sc = absorb_power_allocation(sc);
        const auto [n, c] = interchange_normalize(sc, cfg);
        switch (n.model)
        {
        case Model::Independent:
            return outage_independent(c, opt);
        case Model::SemiRx:
        case Model::SemiTx:
            return outage_semi(c, n.r_spectrum, Side::Rx, opt);
        case Model::Full:
            return outage_full(c, n.t_spectrum, n.r_spectrum, opt);
        }
        throw Error(ErrorCode::InvalidArgument, "unknown model");
    }

} // namespace mimo
