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

#include "mimo/analysis_properties.hpp"

#include <cmath>
#include <random>

using namespace mimo;

TEST_CASE("majorization examples")
{
    CHECK(majorizes({1, 1, 1}, {2.3, 0.5, 0.2}));
    CHECK(majorizes({2.3, 0.5, 0.2}, {2.7, 0.2, 0.1}));
    CHECK_FALSE(majorizes({2.7, 0.2, 0.1}, {2.3, 0.5, 0.2}));
    CHECK(majorizes({2.6, 0.2, 0.2}, {2.9, 0.07, 0.03}));
    CHECK(majorizes({2.3, 0.5, 0.2}, {2.3, 0.5, 0.2}));
    // unequal totals
    CHECK_FALSE(majorizes({1, 1}, {1.5, 1.0}));
    try
    {
        majorizes({1, 1}, {3});
        FAIL("expected LengthMismatch");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::LengthMismatch);
    }
    CHECK_THROWS_AS(majorizes({0.5, 1.5}, {1, 1}), Error);
}

TEST_CASE("majorization is a partial order on random triples")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&] {
        std::vector<double> v{u(rng), u(rng), u(rng), u(rng)};
        double s = 0.0;
        for (double x : v)
            s += x;
        for (double &x : v)
            x *= 4.0 / s;
        std::sort(v.begin(), v.end(), std::greater<>());
        return v;
    };
    int chains = 0;
    for (int k = 0; k < 2000; ++k)
    {
        const auto a = draw(), b = draw(), c = draw();
        CHECK(majorizes(a, a));
        if (majorizes(a, b) && majorizes(b, a))
            for (std::size_t i = 0; i < a.size(); ++i)
                CHECK(a[i] == doctest::Approx(b[i]));
        if (majorizes(a, b) && majorizes(b, c))
        {
            ++chains;
            CHECK(majorizes(a, c));
        }
        // more majorized means smaller determinant (Schur concavity)
        if (majorizes(a, b))
            CHECK(a[0] * a[1] * a[2] * a[3] >= b[0] * b[1] * b[2] * b[3] * (1.0 - 1e-12));
    }
    CHECK(chains > 0);
}

TEST_CASE("permutation reduction holds exactly")
{
    for (int n = 1; n <= 4; ++n)
    {
        const auto rec = lemma1_reduction_check(n, 100);
        CHECK(rec.passed);
        CHECK(rec.worst == 0.0);
    }
    CHECK_FALSE(lemma1_reduction_check(3, 5, 1, 1).passed);
    CHECK_THROWS_AS(lemma1_reduction_check(5, 1), Error);
}

TEST_CASE("convexity scan")
{
    std::vector<double> grid;
    for (int k = 1; k <= 24; ++k)
        grid.push_back(0.25 * k);
    CHECK(convexity_scan([](double r) { return std::exp2(r) - 1.0; }, grid).passed);
    for (auto [nt, nr] : {std::pair{1, 1}, {2, 2}, {3, 2}, {2, 3}, {3, 3}})
        CHECK(convexity_scan(g0_of_rate(nt, nr), grid).passed);
    CHECK_FALSE(convexity_scan([](double r) { return std::log1p(r); }, grid).passed);
    CHECK_FALSE(convexity_scan([](double r) { return -r * r; }, grid).passed);
    CHECK_THROWS_AS(convexity_scan([](double r) { return r; }, {1.0, 0.5, 2.0}), Error);
    // g0 for one antenna pair is exactly 2^R - 1
    CHECK(g0_of_rate(1, 1)(3.0) == doctest::Approx(7.0));
}

TEST_CASE("special case embedding")
{
    for (auto [nt, nr] : {std::pair{1, 1}, {2, 2}, {3, 2}})
    {
        const auto rec = special_case_embedding_check(SystemConfig(nt, nr, 2.0, 15.0));
        CHECK_MESSAGE(rec.passed, rec.detail);
        CHECK_FALSE(special_case_embedding_check(SystemConfig(nt, nr, 2.0, 15.0), 1.001).passed);
    }
}
