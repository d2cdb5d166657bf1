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


// Binary128 arithmetic (libquadmath) for the few evaluators that lose digits
// to cancellation in double. Internal to the library.

#ifndef MIMO_QUAD_PRECISION_HPP
#define MIMO_QUAD_PRECISION_HPP

#include "mimo/core_model.hpp"

#include <quadmath.h>

#include <vector>

namespace mimo::quad
{
    using real = __float128;

    struct complex
    {
        real re = 0;
        real im = 0;

        complex() = default;
        complex(real r, real i = 0) : re(r), im(i) {}
        complex(double r) : re(r), im(0) {}
        explicit complex(cplx z) : re(z.real()), im(z.imag()) {}

        real real_part() const { return re; }
        explicit operator cplx() const { return {static_cast<double>(re), static_cast<double>(im)}; }

        complex &operator+=(const complex &o)
        {
            re += o.re;
            im += o.im;
            return *this;
        }
        complex &operator-=(const complex &o)
        {
            re -= o.re;
            im -= o.im;
            return *this;
        }
        complex &operator*=(const complex &o)
        {
            const real r = re * o.re - im * o.im;
            im = re * o.im + im * o.re;
            re = r;
            return *this;
        }
        complex &operator/=(const complex &o)
        {
            const real d = o.re * o.re + o.im * o.im;
            const real r = (re * o.re + im * o.im) / d;
            im = (im * o.re - re * o.im) / d;
            re = r;
            return *this;
        }
    };

    inline complex operator+(complex a, const complex &b) { return a += b; }
    inline complex operator-(complex a, const complex &b) { return a -= b; }
    inline complex operator*(complex a, const complex &b) { return a *= b; }
    inline complex operator/(complex a, const complex &b) { return a /= b; }
    inline complex operator-(const complex &a) { return {-a.re, -a.im}; }

    inline real real_of(const complex &z) { return z.re; }
    inline real abs(const complex &z) { return hypotq(z.re, z.im); }

    inline complex exp(const complex &z)
    {
        real s, c;
        sincosq(z.im, &s, &c);
        const real m = expq(z.re);
        return {m * c, m * s};
    }

    inline complex log(const complex &z) { return {logq(hypotq(z.re, z.im)), atan2q(z.im, z.re)}; }

    struct PsiArgs
    {
        double a;
        real z;
    };

    // Psi(a_k, a_k + 1 + p; z_k) in binary128, same quadrature as the double
    // family with tighter cut-offs and tolerance.
    std::vector<complex> tricomi_psi_family(const complex &p, const std::vector<PsiArgs> &members);

} // namespace mimo::quad

#endif
