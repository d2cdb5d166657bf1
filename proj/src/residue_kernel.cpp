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

#include "mimo/residue_kernel.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>

namespace mimo
{
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;
    using wide = boost::multiprecision::cpp_bin_float_50;

    struct ResiduePolynomial::Exact
    {
        std::map<std::pair<int, int>, cpp_rational> coeff; // (t, k) -> coefficient, no zeros
    };

    struct ResidueAccess
    {
        static ResiduePolynomial make(ResiduePolynomial::Exact e)
        {
            for (auto it = e.coeff.begin(); it != e.coeff.end();)
                it = it->second == 0 ? e.coeff.erase(it) : std::next(it);
            return ResiduePolynomial(std::make_shared<const ResiduePolynomial::Exact>(std::move(e)));
        }
        static const ResiduePolynomial::Exact &exact(const ResiduePolynomial &p) { return *p.exact_; }
    };

    ResiduePolynomial::ResiduePolynomial() : exact_(std::make_shared<const Exact>()) {}

    ResiduePolynomial::ResiduePolynomial(std::shared_ptr<const Exact> exact) : exact_(std::move(exact))
    {
        for (const auto &[key, c] : exact_->coeff)
            terms_.push_back({key.first, key.second, static_cast<double>(c)});
    }

    std::string ResiduePolynomial::exact_coefficient(int t, int k) const
    {
        auto it = exact_->coeff.find({t, k});
        return it == exact_->coeff.end() ? std::string("0") : it->second.str();
    }

    bool ResiduePolynomial::operator==(const ResiduePolynomial &other) const
    {
        return exact_->coeff == other.exact_->coeff;
    }

    namespace
    {
        // Taylor coefficients of prod_{q != p} (s - q)^{-m_q} at s = p, orders 0..n-1.
        std::vector<cpp_rational> regular_part(const PoleSet &poles, int p, int n)
        {
            std::vector<cpp_rational> series(static_cast<size_t>(n), cpp_rational(0));
            series[0] = 1;
            for (const auto &[q, m] : poles)
            {
                if (q == p)
                    continue;
                // (d + e)^{-m} = sum_j (-1)^j C(m+j-1, j) d^{-m-j} e^j, d = p - q
                const cpp_rational d(p - q);
                std::vector<cpp_rational> factor(static_cast<size_t>(n));
                cpp_rational dpow = 1;
                for (int i = 0; i < m; ++i)
                    dpow /= d;
                cpp_int binom = 1; // C(m+j-1, j)
                for (int j = 0; j < n; ++j)
                {
                    if (j > 0)
                    {
                        binom = binom * (m + j - 1) / j;
                        dpow /= d;
                    }
                    factor[static_cast<size_t>(j)] = (j % 2 == 0 ? 1 : -1) * cpp_rational(binom) * dpow;
                }
                std::vector<cpp_rational> next(static_cast<size_t>(n), cpp_rational(0));
                for (int a = 0; a < n; ++a)
                    for (int b = 0; a + b < n; ++b)
                        next[static_cast<size_t>(a + b)] += series[static_cast<size_t>(a)] * factor[static_cast<size_t>(b)];
                series = std::move(next);
            }
            return series;
        }

        ResiduePolynomial::Exact residue_sum_exact(const PoleSet &poles)
        {
            ResiduePolynomial::Exact out;
            cpp_int fact = 1;
            for (const auto &[p, m] : poles)
            {
                // x^s = x^p sum_j (ln x)^j (s-p)^j / j!
                const auto h = regular_part(poles, p, m);
                fact = 1;
                for (int j = 0; j < m; ++j)
                {
                    if (j > 0)
                        fact *= j;
                    const cpp_rational c = h[static_cast<size_t>(m - 1 - j)] / cpp_rational(fact);
                    if (c != 0)
                        out.coeff[{p, j}] += c;
                }
            }
            return out;
        }

        PoleSet normalize(PoleSet poles)
        {
            std::map<int, int> merged;
            for (const auto &[p, m] : poles)
                if (m > 0)
                    merged[p] += m;
            return PoleSet(merged.begin(), merged.end());
        }

        std::mutex cache_guard;
        std::map<PoleSet, ResiduePolynomial> &cache()
        {
            static std::map<PoleSet, ResiduePolynomial> c;
            return c;
        }

        std::map<std::pair<int, int>, ResiduePolynomial> &permutation_cache()
        {
            static std::map<std::pair<int, int>, ResiduePolynomial> c;
            return c;
        }

        cpp_int factorial(int n)
        {
            cpp_int f = 1;
            for (int i = 2; i <= n; ++i)
                f *= i;
            return f;
        }
    } // namespace

    ResiduePolynomial residue_sum(const PoleSet &poles_in)
    {
        const PoleSet poles = normalize(poles_in);
        if (poles.empty())
            throw Error(ErrorCode::EmptyPoleSet, "kernel has no poles");
        {
            std::lock_guard<std::mutex> lock(cache_guard);
            auto it = cache().find(poles);
            if (it != cache().end())
                return it->second;
        }
        ResiduePolynomial poly = ResidueAccess::make(residue_sum_exact(poles));
        std::lock_guard<std::mutex> lock(cache_guard);
        cache().emplace(poles, poly);
        return poly;
    }

    ResiduePolynomial g_sigma(const std::vector<int> &sigma, int tau, int n_r)
    {
        if (n_r < 1 || static_cast<int>(sigma.size()) != n_r)
            throw Error(ErrorCode::LengthMismatch, "permutation length must equal n_r");
        std::vector<int> sorted = sigma;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < n_r; ++i)
            if (sorted[static_cast<size_t>(i)] != i + 1)
                throw Error(ErrorCode::InvalidArgument, "sigma is not a permutation of 1..n_r");
        std::map<int, int> mult{{0, 1}};
        for (int i = 1; i <= n_r; ++i)
        {
            const int top = tau + i + sigma[static_cast<size_t>(i - 1)];
            if (top < 1)
                throw Error(ErrorCode::EmptyPoleSet, "tau + i + sigma_i must be at least 1");
            for (int t = 1; t <= top; ++t)
                ++mult[t];
        }
        return residue_sum(PoleSet(mult.begin(), mult.end()));
    }

    ResiduePolynomial g_n_full(const std::vector<int> &n, const SystemConfig &cfg)
    {
        if (cfg.n_t() < cfg.n_r())
            throw Error(ErrorCode::InvalidArgument, "g_n needs n_t >= n_r; interchange first");
        if (static_cast<int>(n.size()) != cfg.n_r())
            throw Error(ErrorCode::LengthMismatch, "n must have n_r entries");
        std::map<int, int> mult{{0, 1}};
        for (int i = 1; i <= cfg.n_r(); ++i)
        {
            const int ni = n[static_cast<size_t>(i - 1)];
            if (ni < 0)
                throw Error(ErrorCode::InvalidArgument, "n entries must be non-negative");
            for (int q = i; q <= i + cfg.n_t() + ni - 1; ++q)
                ++mult[q];
        }
        return residue_sum(PoleSet(mult.begin(), mult.end()));
    }

    namespace
    {
        // Returns the sum and the digits lost to cancellation, log10(sum |term| / |sum|).
        template <class F>
        std::pair<double, double> evaluate_in(const ResiduePolynomial::Exact &e, double x)
        {
            const F wx(x);
            const F lx = log(wx);
            F sum = 0;
            F mag = 0;
            for (const auto &[key, c] : e.coeff)
            {
                const F term = F(numerator(c)) / F(denominator(c)) * pow(wx, key.first) * pow(lx, key.second);
                sum += term;
                mag += abs(term);
            }
            if (mag == 0)
                return {0.0, 0.0};
            if (sum == 0)
                return {0.0, std::numeric_limits<double>::infinity()};
            return {static_cast<double>(sum), static_cast<double>(log10(mag) - log10(abs(sum)))};
        }
    } // namespace

    double evaluate(const ResiduePolynomial &poly, double x)
    {
        if (!(x >= 1.0))
            throw Error(ErrorCode::InvalidArgument, "kernel evaluation needs x >= 1");
        using boost::multiprecision::cpp_bin_float;
        using boost::multiprecision::number;
        const auto &e = ResidueAccess::exact(poly);
        // near x = 1 the terms cancel to many digits; widen until 20 survive
        auto r = evaluate_in<wide>(e, x);
        if (r.second < 30.0)
            return r.first;
        r = evaluate_in<number<cpp_bin_float<150>>>(e, x);
        if (r.second < 130.0)
            return r.first;
        r = evaluate_in<number<cpp_bin_float<400>>>(e, x);
        if (r.second < 380.0 || x == 1.0)
            return r.first;
        throw Error(ErrorCode::NumericalFailure, "kernel cancellation exceeds 400 digits");
    }

    ResiduePolynomial permutation_kernel(const SystemConfig &cfg)
    {
        if (cfg.n_t() < cfg.n_r())
            throw Error(ErrorCode::InvalidArgument, "permutation kernel needs n_t >= n_r; interchange first");
        const int nt = cfg.n_t();
        const int nr = cfg.n_r();
        {
            std::lock_guard<std::mutex> lock(cache_guard);
            auto it = permutation_cache().find({nt, nr});
            if (it != permutation_cache().end())
                return it->second;
        }
        const int tau = cfg.tau();
        const auto &perms = PermutationTable::of(nr);
        cpp_int denom = 1;
        for (int i = 1; i <= nr; ++i)
            denom *= factorial(nr - i) * factorial(nt - i);

        ResiduePolynomial::Exact acc;
        for (std::size_t j = 0; j < perms.size(); ++j)
        {
            const auto &sigma = perms.sigma[j];
            cpp_int weight = perms.sign[j];
            for (int i = 1; i <= nr; ++i)
                weight *= factorial(tau + i + sigma[static_cast<size_t>(i - 1)] - 1); // Gamma(m) = (m-1)!
            const cpp_rational w(weight, denom);
            for (const auto &[key, c] : ResidueAccess::exact(g_sigma(sigma, tau, nr)).coeff)
                acc.coeff[key] += w * c;
        }
        ResiduePolynomial poly = ResidueAccess::make(std::move(acc));
        std::lock_guard<std::mutex> lock(cache_guard);
        permutation_cache().emplace(std::make_pair(nt, nr), poly);
        return poly;
    }

    double g0_via_permutation_identity(const SystemConfig &cfg)
    {
        return evaluate(permutation_kernel(cfg), cfg.threshold());
    }

} // namespace mimo
