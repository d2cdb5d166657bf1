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

#include "mimo/special_functions.hpp"
#include "quad_precision.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace mimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;

        // Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficient set).
        constexpr double lanczos_g = 607.0 / 128.0;
        constexpr std::array<double, 15> lanczos_c = {
            0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
            14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
            .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
            -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
            .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

        cplx ln_gamma_right(cplx z) // Re z >= 0.5
        {
            const cplx zm = z - 1.0;
            cplx sum = lanczos_c[0];
            for (int k = 1; k < 15; ++k)
                sum += lanczos_c[static_cast<size_t>(k)] / (zm + static_cast<double>(k));
            const cplx t = zm + lanczos_g + 0.5;
            return 0.5 * std::log(2.0 * pi) + (zm + 0.5) * std::log(t) - t + std::log(sum);
        }

        // log(sin(pi z)) on the branch continuous in each half plane, no overflow.
        // sin(pi z) = e^{-i pi z} (1 - e^{2 i pi z}) i / 2
        cplx log_sin_pi(cplx z)
        {
            if (z.imag() < 0.0)
                return std::conj(log_sin_pi(std::conj(z)));
            const cplx I(0.0, 1.0);
            return -I * pi * z + std::log(1.0 - std::exp(2.0 * I * pi * z)) + cplx(-std::log(2.0), pi / 2.0);
        }
    } // namespace

    cplx ln_gamma(cplx z)
    {
        if (z.imag() == 0.0 && z.real() <= 0.0 && std::floor(z.real()) == z.real())
            throw Error(ErrorCode::PoleAtNonpositiveInteger, "Gamma has a pole at " + std::to_string(z.real()));
        if (z.real() >= 0.5)
            return ln_gamma_right(z);
        // reflection: Gamma(z) Gamma(1-z) = pi / sin(pi z)
        return std::log(pi) - log_sin_pi(z) - ln_gamma_right(1.0 - z);
    }

    cplx gamma(cplx z) { return std::exp(ln_gamma(z)); }

    cplx pochhammer(cplx x, int n)
    {
        if (n < 0)
            throw Error(ErrorCode::InvalidArgument, "Pochhammer index must be non-negative");
        cplx p = 1.0;
        for (int k = 0; k < n; ++k)
            p *= x + static_cast<double>(k);
        return p;
    }

    // ---- Gauss-Legendre rule -------------------------------------------------

    namespace
    {
        struct GlTables
        {
            std::array<double, GaussLegendre::order> x{};
            std::array<double, GaussLegendre::order> w{};
            GlTables()
            {
                using rule = boost::math::quadrature::gauss<double, GaussLegendre::order>;
                const auto &ax = rule::abscissa();
                const auto &wt = rule::weights();
                const size_t half = ax.size();
                for (size_t i = 0; i < half; ++i)
                {
                    x[half - 1 - i] = -ax[i];
                    w[half - 1 - i] = wt[i];
                    x[half + i] = ax[i];
                    w[half + i] = wt[i];
                }
            }
        };
        const GlTables &gl_tables()
        {
            static const GlTables t;
            return t;
        }
    } // namespace

    const std::array<double, GaussLegendre::order> &GaussLegendre::nodes() { return gl_tables().x; }
    const std::array<double, GaussLegendre::order> &GaussLegendre::weights() { return gl_tables().w; }

    // ---- Tricomi Psi -----------------------------------------------------------

    namespace
    {
        constexpr int psi_max_nodes = 1 << 16;

        // Per-precision constants: stopping tolerance on the gap between
        // successive halvings, e-folds dropped at either end of the ray, and
        // the exponent below which exp underflows.
        struct DoublePsi
        {
            using real = double;
            using complex = cplx;
            static constexpr double rel_tol = 1e-15;
            static constexpr double nats = 45.0;
            static constexpr double underflow = -745.0;
            static constexpr int max_nodes = psi_max_nodes;
            static real lgamma(double a) { return std::lgamma(a); }
            static real exp(real x) { return std::exp(x); }
            static complex exp(const complex &z) { return std::exp(z); }
            static complex log(const complex &z) { return std::log(z); }
            static real abs(const complex &z) { return std::abs(z); }
            static real re(const complex &z) { return z.real(); }
        };

        struct QuadPsi
        {
            using real = quad::real;
            using complex = quad::complex;
            // the nodes are shared by every member, so quadrature error is
            // common to all entries; only rounding needs the extra digits
            static constexpr double rel_tol = 1e-26;
            static constexpr double nats = 70.0;
            static constexpr double left = 38.0;
            static constexpr double underflow = -11355.0;
            static constexpr int max_nodes = 4 * psi_max_nodes;
            static real lgamma(double a) { return lgammaq(a); }
            static real exp(real x) { return expq(x); }
            static complex exp(const complex &z) { return quad::exp(z); }
            static complex log(const complex &z) { return quad::log(z); }
            static real abs(const complex &z) { return quad::abs(z); }
            static real re(const complex &z) { return z.re; }
        };

        // Integration ray t = e^{w + i theta}, w in [w_lo, w_hi]. In w the
        // integrand is analytic in a strip around the real axis, so the
        // trapezoid rule converges geometrically and halving the step reuses
        // every earlier node.
        struct PsiRay
        {
            double theta = 0.0;
            double w_lo = 0.0;
            double w_hi = 0.0;
        };

        PsiRay make_ray(cplx p, const std::vector<PsiArgs> &members, double nats, double left_nats)
        {
            PsiRay r;
            const double nu = p.imag();
            const double rep = p.real();
            if (std::abs(nu) > 2.0)
                r.theta = (nu > 0.0 ? 1.0 : -1.0) * pi / 4.0;
            const double c = std::cos(r.theta);
            const double s = std::abs(std::sin(r.theta));

            r.w_lo = std::numeric_limits<double>::infinity();
            r.w_hi = -std::numeric_limits<double>::infinity();
            for (const auto &m : members)
            {
                // right end: e^{-z t} beats the algebraic growth
                const double zt_max = nats + 3.0 * std::max(0.0, m.a - 1.0 + rep);
                double hi = std::log(zt_max / (m.z * c));
                if (r.theta != 0.0)
                {
                    // e^{-nu arg(1+t)} is negligible once arg(1+t) exceeds phi0
                    const double phi0 = (nats + 2.0 * (m.a + std::abs(rep))) / std::abs(nu);
                    if (phi0 < 0.9 * std::abs(r.theta))
                    {
                        const double tp = std::tan(phi0);
                        hi = std::min(hi, std::log(tp / (s - tp * c)));
                    }
                }
                // left end: t^a decay below the bulk
                const double scale = std::min(1.0, m.a / (m.z * c + std::abs(nu) * s + 1e-300));
                const double lo = std::log(scale) - left_nats / m.a - 1.0;
                r.w_lo = std::min(r.w_lo, lo);
                r.w_hi = std::max(r.w_hi, std::max(hi, lo + 1.0));
            }
            return r;
        }

        template <class P>
        struct PsiFamilyEval
        {
            using real = typename P::real;
            using complex = typename P::complex;

            const PsiRay &ray;
            complex p;
            std::vector<double> as;   // distinct first parameters
            std::vector<real> zs;     // distinct arguments
            std::vector<size_t> a_of; // member -> index in as
            std::vector<size_t> z_of; // member -> index in zs
            std::vector<complex> ta, ez;
            complex dir; // e^{i theta} at the policy's precision

            PsiFamilyEval(const PsiRay &r, complex p_, const std::vector<double> &a, const std::vector<real> &z)
                : ray(r), p(p_), dir(P::exp(complex(real(0), real(r.theta))))
            {
                for (size_t k = 0; k < a.size(); ++k)
                {
                    auto ia = std::find(as.begin(), as.end(), a[k]);
                    if (ia == as.end())
                        ia = as.insert(as.end(), a[k]);
                    a_of.push_back(static_cast<size_t>(ia - as.begin()));
                    auto iz = std::find(zs.begin(), zs.end(), z[k]);
                    if (iz == zs.end())
                        iz = zs.insert(zs.end(), z[k]);
                    z_of.push_back(static_cast<size_t>(iz - zs.begin()));
                }
                ta.resize(as.size());
                ez.resize(zs.size());
            }

            // adds weight * integrand(w) for every member into acc
            void accumulate(real w, std::vector<complex> &acc)
            {
                const complex lt(w, real(ray.theta));
                const complex t = complex(P::exp(w)) * dir;
                const complex base = p * P::log(complex(1.0) + t);
                for (size_t i = 0; i < as.size(); ++i)
                    ta[i] = complex(as[i]) * lt;
                for (size_t i = 0; i < zs.size(); ++i)
                    ez[i] = complex(-zs[i]) * t;
                for (size_t k = 0; k < acc.size(); ++k)
                {
                    const complex e = base + ta[a_of[k]] + ez[z_of[k]];
                    if (P::re(e) > P::underflow)
                        acc[k] += P::exp(e);
                }
            }
        };

        template <class P>
        struct FamilyValue
        {
            typename P::complex value;
            typename P::real err;
            int nodes;
            bool converged;
        };

        template <class P>
        std::vector<FamilyValue<P>> psi_family(const PsiRay &ray, typename P::complex p, const std::vector<double> &a,
                                               const std::vector<typename P::real> &z)
        {
            using real = typename P::real;
            using complex = typename P::complex;
            PsiFamilyEval<P> eval(ray, p, a, z);
            const size_t m = a.size();
            std::vector<FamilyValue<P>> out(m);

            int intervals = 16;
            const real w_lo = ray.w_lo;
            real h = (real(ray.w_hi) - w_lo) / intervals;
            std::vector<complex> sum(m, complex(0.0));
            // endpoints carry weight 1/2; both are negligible by construction
            std::vector<complex> ends(m, complex(0.0));
            eval.accumulate(w_lo, ends);
            eval.accumulate(real(ray.w_hi), ends);
            for (size_t k = 0; k < m; ++k)
                sum[k] = complex(0.5) * ends[k];
            for (int j = 1; j < intervals; ++j)
                eval.accumulate(w_lo + j * h, sum);

            std::vector<complex> prev(m);
            for (size_t k = 0; k < m; ++k)
                prev[k] = sum[k] * complex(h);

            std::vector<real> inv_gamma(m);
            for (size_t k = 0; k < m; ++k)
                inv_gamma[k] = P::re(P::exp(complex(-P::lgamma(a[k]))));

            for (;;)
            {
                // halve the step: add the midpoints
                for (int j = 0; j < intervals; ++j)
                    eval.accumulate(w_lo + (j + real(0.5)) * h, sum);
                intervals *= 2;
                h /= 2;
                bool done = true;
                for (size_t k = 0; k < m; ++k)
                {
                    const complex cur = sum[k] * complex(h);
                    const real gap = P::abs(cur - prev[k]);
                    // halving the step squares the error of the trapezoid
                    // rule on an analytic strip, so the gap to the previous
                    // level is that level's error and the current error is
                    // about gap^2 / |cur|
                    const real mag = P::abs(cur);
                    const real err = std::min(gap, 16 * gap * gap / mag);
                    out[k].value = cur * complex(inv_gamma[k]);
                    out[k].err = err * inv_gamma[k];
                    out[k].nodes = intervals + 1;
                    out[k].converged = err <= P::rel_tol * mag;
                    done = done && out[k].converged;
                    prev[k] = cur;
                }
                if (done || 2 * intervals + 1 > P::max_nodes)
                    break;
            }
            return out;
        }

        void check_family(cplx p, const std::vector<PsiArgs> &members)
        {
            if (!std::isfinite(p.real()) || !std::isfinite(p.imag()))
                throw Error(ErrorCode::InvalidArgument, "tricomi_psi needs a finite second parameter");
            for (const auto &m : members)
                if (!(m.a > 0.0) || !(m.z > 0.0) || !std::isfinite(m.a) || !std::isfinite(m.z))
                    throw Error(ErrorCode::InvalidArgument, "tricomi_psi needs a > 0 and z > 0");
        }
    } // namespace

    std::vector<PsiResult> tricomi_psi_family(cplx p, const std::vector<PsiArgs> &members)
    {
        check_family(p, members);
        std::vector<PsiResult> out(members.size());
        if (members.empty())
            return out;
        std::vector<double> a, z;
        for (const auto &m : members)
        {
            a.push_back(m.a);
            z.push_back(m.z);
        }
        const PsiRay ray = make_ray(p, members, DoublePsi::nats, DoublePsi::nats - 7.0);
        const auto res = psi_family<DoublePsi>(ray, p, a, z);
        for (size_t k = 0; k < res.size(); ++k)
            out[k] = {res[k].value, res[k].err, res[k].nodes, res[k].converged};
        return out;
    }

    std::vector<quad::complex> quad::tricomi_psi_family(const quad::complex &p, const std::vector<quad::PsiArgs> &members)
    {
        const cplx pd(p);
        std::vector<mimo::PsiArgs> rounded;
        std::vector<double> a;
        std::vector<quad::real> z;
        for (const auto &m : members)
        {
            rounded.push_back({m.a, static_cast<double>(m.z)});
            a.push_back(m.a);
            z.push_back(m.z);
        }
        check_family(pd, rounded);
        std::vector<quad::complex> out;
        if (members.empty())
            return out;
        const PsiRay ray = make_ray(pd, rounded, QuadPsi::nats, QuadPsi::left);
        for (const auto &r : psi_family<QuadPsi>(ray, p, a, z))
            out.push_back(r.value);
        return out;
    }

    PsiResult tricomi_psi_ex(double a, cplx b, double z)
    {
        return tricomi_psi_family(b - a - 1.0, {PsiArgs{a, z}}).front();
    }

    cplx tricomi_psi(double a, cplx b, double z) { return tricomi_psi_ex(a, b, z).value; }

    cplx xi(double a, double alpha, double big_a, double phi, cplx s)
    {
        if (big_a == 0.0)
        {
            if (alpha != -1.0 || phi != 1.0)
                throw Error(ErrorCode::InvalidDegenerateParameters, "Xi with A = 0 requires alpha = -1 and phi = 1");
            return gamma(a - s);
        }
        if (!(big_a > 0.0))
            throw Error(ErrorCode::InvalidArgument, "Xi requires A >= 0");
        const cplx b = phi + a + alpha * s;
        return std::exp((b - 1.0) * std::log(big_a)) * tricomi_psi(phi, b, big_a);
    }

} // namespace mimo
