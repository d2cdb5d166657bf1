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

#include "mimo/special_functions.hpp"

#include <cmath>

using namespace mimo;

namespace
{
    double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
} // namespace

// Reference values from mpmath (30 digits), rounded to 18.
TEST_CASE("log gamma against mpmath")
{
    CHECK(rel(ln_gamma({0.5, 10.0}), {-14.7890247347442935, 13.0300200349110899}) < 1e-13);
    CHECK(rel(ln_gamma({-2.5, 0.3}), {-0.432088892613201921, -9.09334542128974151}) < 1e-13);
    CHECK(rel(ln_gamma({3.0, -40.0}), {-52.6891550608226366, -111.405132415459965}) < 1e-13);
    CHECK(rel(ln_gamma({0.1, 0.0}), {2.2527126517342059, 0.0}) < 1e-13);
}

TEST_CASE("gamma at integers and half integers")
{
    CHECK(std::abs(mimo::gamma(5.0) - 24.0) < 1e-12);
    CHECK(std::abs(mimo::gamma(0.5) - std::sqrt(M_PI)) < 1e-14);
    CHECK(std::abs(mimo::gamma(-0.5) + 2.0 * std::sqrt(M_PI)) < 1e-13);
    // Gamma(z+1) = z Gamma(z) off the axis
    const cplx z(1.3, -7.2);
    CHECK(rel(mimo::gamma(z + 1.0), z * mimo::gamma(z)) < 1e-13);
}

TEST_CASE("gamma poles are reported")
{
    CHECK_THROWS_AS(ln_gamma(0.0), Error);
    CHECK_THROWS_AS(ln_gamma(-3.0), Error);
    try
    {
        ln_gamma(-2.0);
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::PoleAtNonpositiveInteger);
    }
}

TEST_CASE("pochhammer")
{
    CHECK(std::abs(pochhammer(3.0, 4) - 360.0) < 1e-12);
    CHECK(pochhammer(cplx(0.3, 1.0), 0) == cplx(1.0, 0.0));
    CHECK_THROWS_AS(pochhammer(1.0, -1), Error);
}

TEST_CASE("tricomi psi against mpmath hyperu")
{
    CHECK(rel(tricomi_psi(1.0, 2.5, 0.7), 2.14992057280724664) < 1e-11);
    CHECK(rel(tricomi_psi(2.0, {3.5, 4.0}, 1.3), {-0.197027470046507543, -0.08065000593632738}) < 1e-11);
    CHECK(rel(tricomi_psi(3.0, {-0.5, 12.0}, 0.25), {-0.000336602350469707434, -0.000419590481939628522}) <
          1e-11);
    CHECK(rel(tricomi_psi(1.5, {2.0, -30.0}, 2.0), {-0.00403676339332973538, -0.00457705961933875703}) < 1e-11);
    CHECK(rel(tricomi_psi(4.0, 5.5, 10.0), 0.000118034379773667959) < 1e-11);
}

TEST_CASE("tricomi psi closed forms")
{
    // U(a, a+1, z) = z^-a
    for (double z : {0.1, 1.0, 7.5})
        CHECK(rel(tricomi_psi(2.5, 3.5, z), std::pow(z, -2.5)) < 1e-11);
    // U(1, 1, z) = e^z E1(z)
    CHECK(rel(tricomi_psi(1.0, 1.0, 2.0), -std::exp(2.0) * std::expint(-2.0)) < 1e-11);
}

TEST_CASE("psi family matches single evaluations")
{
    const cplx p(0.7, 9.0);
    const std::vector<PsiArgs> members = {{1.0, 0.3}, {2.0, 0.3}, {1.0, 4.0}, {3.0, 1.1}};
    const auto fam = tricomi_psi_family(p, members);
    REQUIRE(fam.size() == members.size());
    for (std::size_t k = 0; k < members.size(); ++k)
    {
        const auto one = tricomi_psi_ex(members[k].a, members[k].a + 1.0 + p, members[k].z);
        CHECK(fam[k].converged);
        CHECK(rel(fam[k].value, one.value) < 1e-11);
    }
    CHECK_THROWS_AS(tricomi_psi_family(p, {{0.0, 1.0}}), Error);
    CHECK_THROWS_AS(tricomi_psi_family(p, {{1.0, -1.0}}), Error);
}

TEST_CASE("xi factor")
{
    const cplx s(-0.5, 3.0);
    CHECK(rel(xi(2.0, -1.0, 0.0, 1.0, s), mimo::gamma(2.0 - s)) < 1e-14);
    const cplx b = 1.0 + 2.0 + 1.0 * s;
    CHECK(rel(xi(2.0, 1.0, 0.8, 1.0, s), std::exp((b - 1.0) * std::log(0.8)) * tricomi_psi(1.0, b, 0.8)) < 1e-14);
    CHECK_THROWS_AS(xi(2.0, 1.0, 0.0, 1.0, s), Error);
}

TEST_CASE("gauss legendre rule integrates degree 39 exactly")
{
    const auto &x = GaussLegendre::nodes();
    const auto &w = GaussLegendre::weights();
    double sum_w = 0.0, m38 = 0.0, m39 = 0.0;
    for (int i = 0; i < GaussLegendre::order; ++i)
    {
        sum_w += w[static_cast<std::size_t>(i)];
        m38 += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], 38);
        m39 += w[static_cast<std::size_t>(i)] * std::pow(x[static_cast<std::size_t>(i)], 39);
    }
    CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m38 == doctest::Approx(2.0 / 39.0).epsilon(1e-13));
    CHECK(std::abs(m39) < 1e-15);
}
