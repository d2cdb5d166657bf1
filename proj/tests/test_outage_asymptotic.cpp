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

#include "mimo/outage_asymptotic.hpp"

#include <cmath>

using namespace mimo;

TEST_CASE("single receive antenna asymptote is y^n / n!")
{
    for (int n = 1; n <= 4; ++n)
        for (double db : {10.0, 30.0})
        {
            const SystemConfig cfg(n, 1, 2.0, db);
            const double y = 3.0 / cfg.rho();
            const double ref = std::pow(y, n) / std::tgamma(n + 1.0);
            CHECK(asym_independent(cfg).probability == doctest::Approx(ref).epsilon(1e-12));
            CHECK(asym_independent(cfg.swapped()).probability == doctest::Approx(ref).epsilon(1e-12));
        }
}

// The eigenvalue-integral reference (mpmath, 40 digits) approaches the
// asymptote like 1/rho.
TEST_CASE("two by two asymptote is the high SNR limit")
{
    const double p30 = asym_independent(SystemConfig(2, 2, 2.0, 30.0)).probability;
    const double p40 = asym_independent(SystemConfig(2, 2, 2.0, 40.0)).probability;
    CHECK(std::abs(p30 / 1.65621813060354e-12 - 1.0) < 3e-3);
    CHECK(std::abs(p40 / 1.65930207738178e-16 - 1.0) < 3e-4);
    // g0 = 32/3 + 4 - 16 ln 2 - 2 + 1/12 at x = 4
    CHECK(p40 * 1e16 == doctest::Approx(32.0 / 3.0 + 2.0 - 16.0 * std::log(2.0) + 1.0 / 12.0).epsilon(1e-13));
}

TEST_CASE("diversity order is the antenna product")
{
    const auto t = EigenSpectrum::correlation({2.3, 0.5, 0.2});
    const auto r = EigenSpectrum::correlation({2.7, 0.2, 0.1});
    const SystemConfig lo(3, 3, 2.0, 60.0), hi(3, 3, 2.0, 80.0);
    for (const auto &sc : {ChannelScenario::independent(3, 3), ChannelScenario::semi_rx(3, r),
                           ChannelScenario::semi_tx(t, 3), ChannelScenario::full(t, r)})
    {
        const double slope = (std::log10(outage_asymptotic(sc, hi).probability) -
                              std::log10(outage_asymptotic(sc, lo).probability)) /
                             2.0;
        CHECK(std::abs(slope + 9.0) < 1e-9);
    }
    CHECK(diversity_order(SystemConfig(3, 2, 1.0, 0.0)) == 6);
}

TEST_CASE("coding gain")
{
    // (2,1): g0 = (x - 1)^2 / 2
    const SystemConfig cfg(2, 1, 2.0, 0.0);
    CHECK(coding_gain(cfg) == doctest::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-13));
    // more antennas, larger gain; higher rate, smaller gain
    CHECK(coding_gain(SystemConfig(3, 3, 2.0, 0.0)) > coding_gain(SystemConfig(2, 2, 2.0, 0.0)));
    CHECK(coding_gain(SystemConfig(2, 2, 3.0, 0.0)) < coding_gain(SystemConfig(2, 2, 2.0, 0.0)));
}

TEST_CASE("correlation and power factors")
{
    const SystemConfig cfg(3, 3, 2.0, 0.0);
    const auto t2 = EigenSpectrum::correlation({2.3, 0.5, 0.2});
    CHECK(spatial_correlation_factor(t2, EigenSpectrum::identity(3), cfg) ==
          doctest::Approx(std::pow(0.23, -3.0)).epsilon(1e-13));
    CHECK(spatial_correlation_factor(t2, EigenSpectrum::identity(3), cfg) == doctest::Approx(82.18).epsilon(2e-4));
    const auto x3 = EigenSpectrum::power({2.9, 0.07, 0.03});
    const auto pf = power_allocation_factor(x3, cfg);
    CHECK(pf.value == doctest::Approx(std::pow(2.9 * 0.07 * 0.03, -3.0)).epsilon(1e-13));
    CHECK(pf.value == doctest::Approx(4.43e6).epsilon(1e-3));
    CHECK(pf.am_gm_bound == doctest::Approx(1.0));
    CHECK(pf.am_gm_bound <= pf.value);
    CHECK(power_allocation_factor(EigenSpectrum::identity(3), cfg).value == 1.0);
    // reduced total power
    const auto half = power_allocation_factor(EigenSpectrum::power({0.9, 0.6, 0.3}), cfg);
    CHECK(half.am_gm_bound == doctest::Approx(std::pow(0.6, -9.0)));
    CHECK(half.am_gm_bound <= half.value);
    CHECK_THROWS_AS(spatial_correlation_factor(t2, EigenSpectrum::identity(2), cfg), Error);
}

TEST_CASE("full model embeds the independent and semi models")
{
    for (auto [nt, nr] : {std::pair{1, 1}, {2, 2}, {3, 2}, {2, 3}})
    {
        const SystemConfig cfg(nt, nr, 2.0, 20.0);
        const double ind = asym_independent(cfg).probability;
        CHECK(asym_full(cfg, EigenSpectrum::identity(nt), EigenSpectrum::identity(nr)).probability ==
              doctest::Approx(ind).epsilon(1e-10));
        if (nr >= 2)
        {
            const auto r = EigenSpectrum::correlation(nr == 2 ? std::vector<double>{1.4, 0.6}
                                                              : std::vector<double>{1.5, 1.0, 0.5});
            CHECK(asym_full(cfg, EigenSpectrum::identity(nt), r).probability ==
                  doctest::Approx(asym_semi(cfg, r, Side::Rx).probability).epsilon(1e-10));
        }
    }
}

TEST_CASE("unified asymptote splits correlation and power")
{
    const auto t = EigenSpectrum::correlation({1.3, 1.0, 0.7});
    const auto r = EigenSpectrum::correlation({1.5, 1.0, 0.5});
    const auto x = EigenSpectrum::power({2.6, 0.2, 0.2});
    const SystemConfig cfg(3, 3, 3.0, 25.0);
    const auto d = unified_asymptote(ChannelScenario::full(t, r).with_power(x), cfg);
    CHECK(d.diversity_order == 9);
    CHECK_FALSE(d.merged_effective);
    CHECK(d.power_factor == doctest::Approx(power_allocation_factor(x, cfg).value));
    CHECK(d.correlation_factor == doctest::Approx(spatial_correlation_factor(t, r, cfg)));

    const auto eff = unified_asymptote_effective(EigenSpectrum::effective({3.38, 0.2, 0.14}), r, cfg);
    CHECK(eff.merged_effective);
    CHECK(eff.probability == doctest::Approx(d.probability).epsilon(1e-12));
    CHECK(outage_asymptotic(ChannelScenario::full(t, r).with_power(x), cfg).probability ==
          doctest::Approx(d.probability).epsilon(1e-12));
    CHECK(outage_asymptotic(ChannelScenario::full(t, r), cfg).probability ==
          doctest::Approx(asym_full(cfg, t, r).probability).epsilon(1e-14));
}

TEST_CASE("asymptote above one is clamped")
{
    const auto res = asym_independent(SystemConfig(3, 3, 4.0, -5.0));
    CHECK(res.probability == 1.0);
    CHECK(res.raw_value > 1.0);
    CHECK(res.method == Method::Asymptotic);
}
