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


#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mimo/residue_kernel.hpp"

#include <cmath>

using namespace mimo;

namespace
{
    double factorial(int n) { return std::tgamma(n + 1.0); }
} // namespace

TEST_CASE("simple pole pair")
{
    const auto p = residue_sum({{0, 1}, {1, 1}});
    CHECK(p.exact_coefficient(1, 0) == "1");
    CHECK(p.exact_coefficient(0, 0) == "-1");
    CHECK(p.exact_coefficient(2, 0) == "0");
    CHECK(evaluate(p, 4.0) == doctest::Approx(3.0));
}

TEST_CASE("poles are merged and order does not matter")
{
    CHECK(residue_sum({{2, 1}, {0, 1}, {2, 1}}) == residue_sum({{0, 1}, {2, 2}}));
    CHECK_THROWS_AS(residue_sum({}), Error);
}

// Expansions below were produced independently with sympy residues.
TEST_CASE("g0 for two by two matches symbolic residues")
{
    const auto g = g_n_full({0, 0}, SystemConfig(2, 2, 1.0, 0.0));
    CHECK(g.exact_coefficient(3, 0) == "1/6");
    CHECK(g.exact_coefficient(2, 0) == "1/4");
    CHECK(g.exact_coefficient(2, 1) == "-1/2");
    CHECK(g.exact_coefficient(1, 0) == "-1/2");
    CHECK(g.exact_coefficient(0, 0) == "1/12");
    CHECK(g.terms().size() == 5);
}

TEST_CASE("g0 for three by two matches symbolic residues")
{
    const auto g = g_n_full({0, 0}, SystemConfig(3, 2, 1.0, 0.0));
    CHECK(g.exact_coefficient(4, 0) == "1/48");
    CHECK(g.exact_coefficient(3, 0) == "11/36");
    CHECK(g.exact_coefficient(3, 1) == "-1/6");
    CHECK(g.exact_coefficient(2, 0) == "-1/4");
    CHECK(g.exact_coefficient(2, 1) == "-1/4");
    CHECK(g.exact_coefficient(1, 0) == "-1/12");
    CHECK(g.exact_coefficient(0, 0) == "1/144");
}

TEST_CASE("one permutation kernel matches symbolic residues")
{
    const auto g = g_sigma({1, 2}, 0, 2);
    CHECK(g.exact_coefficient(4, 0) == "1/144");
    CHECK(g.exact_coefficient(3, 0) == "-1/12");
    CHECK(g.exact_coefficient(2, 0) == "-1/4");
    CHECK(g.exact_coefficient(2, 1) == "1/4");
    CHECK(g.exact_coefficient(1, 0) == "11/36");
    CHECK(g.exact_coefficient(1, 1) == "1/6");
    CHECK(g.exact_coefficient(0, 0) == "1/48");
}

TEST_CASE("single receive antenna gives (x-1)^n / n!")
{
    for (int n = 1; n <= 5; ++n)
    {
        const auto g = g_n_full({0}, SystemConfig(n, 1, 1.0, 0.0));
        for (double x : {1.5, 2.0, 16.0})
            CHECK(evaluate(g, x) == doctest::Approx(std::pow(x - 1.0, n) / factorial(n)).epsilon(1e-13));
        // deep cancellation near x = 1
        CHECK(evaluate(g, 1.0001) == doctest::Approx(std::pow(1e-4, n) / factorial(n)).epsilon(1e-9));
    }
}

TEST_CASE("permutation route equals the direct kernel exactly")
{
    for (auto [nt, nr] : {std::pair{1, 1}, {2, 2}, {3, 2}, {3, 3}, {4, 2}, {2, 1}})
    {
        const SystemConfig cfg(nt, nr, 2.0, 0.0);
        CHECK(permutation_kernel(cfg) == g_n_full(std::vector<int>(static_cast<std::size_t>(nr), 0), cfg));
    }
    const SystemConfig cfg(3, 3, 0.5, 0.0);
    CHECK(g0_via_permutation_identity(cfg) ==
          doctest::Approx(evaluate(g_n_full({0, 0, 0}, cfg), cfg.threshold())).epsilon(1e-12));
}

TEST_CASE("kernel arguments are checked")
{
    CHECK_THROWS_AS(g_sigma({1, 2}, 0, 3), Error);
    CHECK_THROWS_AS(g_sigma({1, 1}, 0, 2), Error);
    try
    {
        g_sigma({1}, -3, 1);
        FAIL("expected EmptyPoleSet");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::EmptyPoleSet);
    }
    CHECK_THROWS_AS(g_n_full({0, 0}, SystemConfig(2, 3, 1.0, 0.0)), Error);
    CHECK_THROWS_AS(g_n_full({0}, SystemConfig(3, 2, 1.0, 0.0)), Error);
    CHECK_THROWS_AS(evaluate(residue_sum({{0, 1}, {1, 1}}), 0.5), Error);
}

TEST_CASE("rounded terms are sorted and consistent")
{
    const auto g = g_n_full({0, 0}, SystemConfig(3, 2, 1.0, 0.0));
    double sum = 0.0;
    const double x = 3.0;
    for (std::size_t i = 0; i < g.terms().size(); ++i)
    {
        const auto &t = g.terms()[i];
        if (i > 0)
        {
            const auto &p = g.terms()[i - 1];
            CHECK((p.t < t.t || (p.t == t.t && p.k < t.k)));
        }
        sum += t.coeff * std::pow(x, t.t) * std::pow(std::log(x), t.k);
    }
    CHECK(sum == doctest::Approx(evaluate(g, x)).epsilon(1e-12));
}
