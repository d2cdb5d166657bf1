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


#include "mimo/analysis_properties.hpp"
#include "mimo/outage_asymptotic.hpp"
#include "mimo/residue_kernel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace mimo
{
    namespace
    {
        using boost::multiprecision::cpp_rational;

        bool descending(const std::vector<double> &v)
        {
            return std::is_sorted(v.begin(), v.end(), std::greater<>());
        }

        double rel_gap(double a, double b)
        {
            const double scale = std::max(std::abs(a), std::abs(b));
            return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
        }

        // n, n-1, ..., 1 scaled to trace n
        std::vector<double> test_spectrum(int n)
        {
            std::vector<double> v;
            for (int i = 0; i < n; ++i)
                v.push_back(2.0 * (n - i) / (n + 1.0));
            return v;
        }
    } // namespace

    bool majorizes(const std::vector<double> &v1, const std::vector<double> &v2)
    {
        if (v1.size() != v2.size())
            throw Error(ErrorCode::LengthMismatch, "majorization needs vectors of equal length");
        if (!descending(v1) || !descending(v2))
            throw Error(ErrorCode::InvalidArgument, "majorization needs descending vectors");
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t k = 0; k + 1 < v1.size(); ++k)
        {
            s1 += v1[k];
            s2 += v2[k];
            if (s1 > s2 + 1e-12 * std::max(1.0, std::abs(s2)))
                return false;
        }
        if (!v1.empty())
        {
            s1 += v1.back();
            s2 += v2.back();
        }
        return std::abs(s1 - s2) <= 1e-9;
    }

    CheckRecord lemma1_reduction_check(int n, int trials, std::uint64_t seed, int reference_offset)
    {
        if (n < 1 || n > 4)
            throw Error(ErrorCode::InvalidArgument, "lemma1_reduction_check supports 1 <= n <= 4");
        CheckRecord rec;
        rec.name = "lemma1_n" + std::to_string(n);
        const PermutationTable &perms = PermutationTable::of(n);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(n));
        std::uniform_int_distribution<int> num(-9, 9), den(1, 7);

        int failures = 0;
        for (int trial = 0; trial < trials; ++trial)
        {
            std::vector<cpp_rational> h(static_cast<std::size_t>(n * n));
            for (auto &v : h)
                v = cpp_rational(num(rng), den(rng));
            auto at = [&](int i, int j) -> const cpp_rational & {
                return h[static_cast<std::size_t>((i - 1) * n + (j - 1))];
            };

            cpp_rational both = 0;
            for (std::size_t a = 0; a < perms.size(); ++a)
                for (std::size_t b = 0; b < perms.size(); ++b)
                {
                    cpp_rational eta = perms.sign[a] * perms.sign[b];
                    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i)
                        eta *= at(perms.sigma[a][i], perms.sigma[b][i]);
                    both += eta;
                }
            cpp_rational single = 0;
            for (std::size_t b = 0; b < perms.size(); ++b)
            {
                cpp_rational eta = perms.sign[b];
                for (int i = 1; i <= n; ++i)
                    eta *= at(i, perms.sigma[b][static_cast<std::size_t>(i - 1)]);
                single += eta;
            }
            if (both != static_cast<long>(perms.size()) * single + reference_offset)
                ++failures;
        }
        rec.passed = failures == 0;
        rec.worst = failures;
        rec.detail = std::to_string(trials) + " trials, " + std::to_string(failures) + " mismatches";
        return rec;
    }

    CheckRecord convexity_scan(const std::function<double(double)> &kernel, const std::vector<double> &grid,
                               const std::string &name)
    {
        CheckRecord rec;
        rec.name = name;
        if (grid.size() < 3 || !std::is_sorted(grid.begin(), grid.end()))
            throw Error(ErrorCode::InvalidArgument, "convexity_scan needs an increasing grid of at least 3 points");
        std::vector<double> f;
        for (double r : grid)
            f.push_back(kernel(r));

        bool ok = true;
        std::ostringstream why;
        for (std::size_t i = 1; i < f.size(); ++i)
            if (!(f[i] - f[i - 1] > 0.0))
            {
                ok = false;
                why << "not increasing at " << grid[i] << "; ";
                break;
            }
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < f.size(); ++i)
        {
            // unequal spacing: compare slopes
            const double left = (f[i] - f[i - 1]) / (grid[i] - grid[i - 1]);
            const double right = (f[i + 1] - f[i]) / (grid[i + 1] - grid[i]);
            const double scale = std::max({1.0, std::abs(left), std::abs(right)});
            const double violation = (left - right) / scale;
            worst = std::max(worst, violation);
            if (violation > 1e-9)
            {
                ok = false;
                why << "concave at " << grid[i] << "; ";
                break;
            }
        }
        rec.passed = ok;
        rec.worst = worst;
        rec.detail = ok ? std::to_string(grid.size()) + " points" : why.str();
        return rec;
    }

    std::function<double(double)> g0_of_rate(int n_t, int n_r)
    {
        const SystemConfig cfg(std::max(n_t, n_r), std::min(n_t, n_r), 1.0, 0.0);
        const std::vector<int> zeros(static_cast<std::size_t>(cfg.n_r()), 0);
        const ResiduePolynomial poly = g_n_full(zeros, cfg);
        return [poly](double rate) { return evaluate(poly, std::exp2(rate)); };
    }

    CheckRecord special_case_embedding_check(const SystemConfig &cfg, double skew)
    {
        CheckRecord rec;
        rec.name = "embedding_" + std::to_string(cfg.n_t()) + "x" + std::to_string(cfg.n_r());
        const auto id_t = EigenSpectrum::identity(cfg.n_t());
        const auto id_r = EigenSpectrum::identity(cfg.n_r());
        const auto t = EigenSpectrum::correlation(test_spectrum(cfg.n_t()));
        const auto r = EigenSpectrum::correlation(test_spectrum(cfg.n_r()));

        const double ind = skew * asym_independent(cfg).probability;
        const double full_id = asym_full(cfg, id_t, id_r).probability;
        const double full_rx = asym_full(cfg, id_t, r).probability;
        const double semi_rx = skew * asym_semi(cfg, r, Side::Rx).probability;
        const double full_tx = asym_full(cfg, t, id_r).probability;
        const double semi_tx = skew * asym_semi(cfg, t, Side::Tx).probability;

        const double g1 = rel_gap(full_id, ind);
        const double g2 = rel_gap(full_rx, semi_rx);
        const double g3 = rel_gap(full_tx, semi_tx);
        rec.worst = std::max({g1, g2, g3});
        rec.passed = rec.worst <= 1e-9;
        std::ostringstream d;
        d << "identity " << g1 << ", rx " << g2 << ", tx " << g3;
        rec.detail = d.str();
        return rec;
    }

} // namespace mimo
