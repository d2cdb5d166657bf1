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

#include "mimo/monte_carlo.hpp"
#include "mimo/outage_exact.hpp"

#include <cmath>

using namespace mimo;

namespace
{
    // e_k of a vector: coefficients of prod (1 + v_i z)
    std::vector<double> elementary(const std::vector<double> &v)
    {
        std::vector<double> e{1.0};
        for (double x : v)
        {
            e.push_back(0.0);
            for (std::size_t k = e.size() - 1; k > 0; --k)
                e[k] += x * e[k - 1];
        }
        return e;
    }

    // E[det(I + rho H H^H)] = sum_k rho^k k! e_k(t) e_k(r) for Kronecker H.
    double mean_gain(const std::vector<double> &t, const std::vector<double> &r, double rho)
    {
        const auto et = elementary(t);
        const auto er = elementary(r);
        double sum = 0.0, fact = 1.0;
        for (std::size_t k = 0; k < std::min(et.size(), er.size()); ++k)
        {
            if (k > 0)
                fact *= static_cast<double>(k);
            sum += std::pow(rho, static_cast<double>(k)) * fact * et[k] * er[k];
        }
        return sum;
    }

    // P(sum of independent exponentials with distinct means m_i < y)
    double hypoexponential_cdf(const std::vector<double> &m, double y)
    {
        double tail = 0.0;
        for (std::size_t i = 0; i < m.size(); ++i)
        {
            double c = 1.0;
            for (std::size_t j = 0; j < m.size(); ++j)
                if (j != i)
                    c *= m[i] / (m[i] - m[j]);
            tail += c * std::exp(-y / m[i]);
        }
        return 1.0 - tail;
    }

    std::vector<double> ones(int n) { return std::vector<double>(static_cast<std::size_t>(n), 1.0); }
} // namespace

TEST_CASE("single antenna closed forms")
{
    for (double db : {-5.0, 0.0, 10.0, 25.0})
        for (double rate : {0.5, 2.0})
        {
            const SystemConfig cfg(1, 1, rate, db);
            const double y = (std::exp2(rate) - 1.0) / cfg.rho();
            CHECK(std::abs(outage_independent(cfg).probability + std::expm1(-y)) < 1e-9);
            const double miso = 1.0 - std::exp(-y) * (1.0 + y);
            CHECK(std::abs(outage_independent(SystemConfig(2, 1, rate, db)).probability - miso) < 1e-9);
            CHECK(std::abs(outage_independent(SystemConfig(1, 2, rate, db)).probability - miso) < 1e-9);
        }
}

// References: two-dimensional integral of the Wishart eigenvalue density in
// mpmath at 20 digits, R = 2.
TEST_CASE("independent channels against the eigenvalue integral")
{
    CHECK(std::abs(outage_independent(SystemConfig(2, 2, 2.0, 0.0)).probability - 0.237353305586956) < 1e-10);
    CHECK(outage_independent(SystemConfig(2, 2, 2.0, 10.0)).probability ==
          doctest::Approx(0.000135124035196547).epsilon(1e-8));
    CHECK(std::abs(outage_independent(SystemConfig(3, 2, 2.0, 0.0)).probability - 0.0310762698185605) < 1e-10);
    CHECK(outage_independent(SystemConfig(3, 2, 2.0, 10.0)).probability ==
          doctest::Approx(1.87240959951484e-7).epsilon(1e-6));
    CHECK(outage_independent(SystemConfig(2, 3, 2.0, 10.0)).probability ==
          doctest::Approx(1.87240959951484e-7).epsilon(1e-6));
}

TEST_CASE("rank-one correlated channels are hypoexponential")
{
    const std::vector<double> r{1.5, 1.0, 0.5};
    for (double db : {0.0, 5.0, 12.0})
    {
        const SystemConfig simo(1, 3, 1.5, db);
        const double y = (simo.threshold() - 1.0) / simo.rho();
        const double ref = hypoexponential_cdf(r, y);
        CHECK(std::abs(outage_semi(simo, EigenSpectrum::correlation(r), Side::Rx).probability - ref) < 1e-9);
        const SystemConfig miso(3, 1, 1.5, db);
        CHECK(std::abs(outage_semi(miso, EigenSpectrum::correlation(r), Side::Tx).probability - ref) < 1e-9);
    }
}

TEST_CASE("phi is a probability transform: phi(1) = 1 and phi(2) = E[G]")
{
    const std::vector<double> t{1.5, 1.0, 0.5}, r2{1.4, 0.6}, r3{2.7, 0.2, 0.1}, t3{2.3, 0.5, 0.2};
    for (double db : {0.0, 7.0, 15.0})
    {
        const SystemConfig c32(3, 2, 2.0, db), c23(2, 3, 2.0, db), c33(3, 3, 2.0, db);
        const double rho = c32.rho();
        CHECK(std::abs(phi_independent(1.0, c32) - 1.0) < 1e-10);
        CHECK(std::abs(phi_independent(2.0, c32).real() / mean_gain(ones(3), ones(2), rho) - 1.0) < 1e-10);

        const auto er2 = EigenSpectrum::correlation(r2);
        CHECK(std::abs(phi_semi(1.0, c32, er2) - 1.0) < 1e-10);
        CHECK(std::abs(phi_semi(2.0, c32, er2).real() / mean_gain(ones(3), r2, rho) - 1.0) < 1e-10);

        const auto er3 = EigenSpectrum::correlation(r3);
        CHECK(std::abs(phi_semi(1.0, c23, er3) - 1.0) < 1e-10);
        CHECK(std::abs(phi_semi(2.0, c23, er3).real() / mean_gain(ones(2), r3, rho) - 1.0) < 1e-10);

        const auto et = EigenSpectrum::correlation(t);
        CHECK(std::abs(phi_full(1.0, c32, et, er2) - 1.0) < 1e-10);
        CHECK(std::abs(phi_full(2.0, c32, et, er2).real() / mean_gain(t, r2, rho) - 1.0) < 1e-10);

        const auto et3 = EigenSpectrum::correlation(t3);
        CHECK(std::abs(phi_full(1.0, c33, et3, er3) - 1.0) < 1e-9);
        CHECK(std::abs(phi_full(2.0, c33, et3, er3).real() / mean_gain(t3, r3, rho) - 1.0) < 1e-9);
    }
}

TEST_CASE("summation modes agree")
{
    const SystemConfig cfg(3, 3, 2.0, 10.0);
    const auto t = EigenSpectrum::correlation({2.3, 0.5, 0.2});
    const auto r = EigenSpectrum::correlation({2.7, 0.2, 0.1});
    for (cplx s : {cplx(0.5, 3.0), cplx(0.5, 40.0), cplx(0.5, -200.0)})
    {
        const cplx a = phi_full(s, cfg, t, r, SumMode::Compensated);
        const cplx b = phi_full(s, cfg, t, r, SumMode::DoubleDouble);
        CHECK(std::abs(a - b) <= 1e-10 * std::abs(b) + 1e-300);
    }
}

TEST_CASE("correlated channels against Monte Carlo")
{
    constexpr std::uint64_t n = 200000;
    const auto t = EigenSpectrum::correlation({1.5, 1.0, 0.5});
    const auto r = EigenSpectrum::correlation({1.4, 0.6});
    const std::vector<std::pair<ChannelScenario, SystemConfig>> cases = {
        {ChannelScenario::semi_rx(3, r), SystemConfig(3, 2, 2.0, 5.0)},
        {ChannelScenario::semi_tx(t, 2), SystemConfig(3, 2, 2.0, 5.0)},
        {ChannelScenario::full(t, r), SystemConfig(3, 2, 2.0, 5.0)},
        {ChannelScenario::full(r, t), SystemConfig(2, 3, 2.0, 5.0)},
    };
    for (const auto &[sc, cfg] : cases)
    {
        const double p = outage_exact(sc, cfg).probability;
        const auto mc = estimate_outage(sc, cfg, n, 11);
        const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
        CHECK(std::abs(mc.p_hat - p) < 4.0 * se);
    }
}

TEST_CASE("dispatch normalizes sides and power allocation")
{
    const auto t = EigenSpectrum::correlation({1.5, 1.0, 0.5});
    const SystemConfig cfg(3, 2, 2.0, 8.0);
    const double tx = outage_exact(ChannelScenario::semi_tx(t, 2), cfg).probability;
    const double rx = outage_exact(ChannelScenario::semi_rx(2, t), cfg.swapped()).probability;
    CHECK(tx == doctest::Approx(rx).epsilon(1e-12));
    CHECK(outage_semi(cfg, t, Side::Tx).probability == doctest::Approx(tx).epsilon(1e-12));

    const auto x = EigenSpectrum::power({1.2, 1.0, 0.8});
    const double with_x = outage_exact(ChannelScenario::semi_tx(t, 2).with_power(x), cfg).probability;
    const auto eff = EigenSpectrum::effective({1.8, 1.0, 0.4});
    CHECK(with_x == doctest::Approx(outage_semi(cfg, eff, Side::Tx).probability).epsilon(1e-10));

    CHECK(outage_exact(ChannelScenario::independent(3, 2), cfg).probability ==
          doctest::Approx(outage_independent(cfg).probability).epsilon(1e-14));
}

TEST_CASE("exact evaluators reject what they cannot handle")
{
    const SystemConfig cfg(3, 2, 2.0, 5.0);
    CHECK_THROWS_AS(outage_semi(cfg, EigenSpectrum::identity(2), Side::Rx), Error);
    CHECK_THROWS_AS(outage_full(cfg, EigenSpectrum::identity(3), EigenSpectrum::identity(2)), Error);
    CHECK_THROWS_AS(phi_independent(1.0, SystemConfig(2, 3, 1.0, 0.0)), Error);
    try
    {
        outage_exact(ChannelScenario::semi_tx(EigenSpectrum::correlation({1.5, 1.0, 0.5}), 2)
                         .with_power(EigenSpectrum::power({0.5, 1.0, 1.5}, false)),
                     cfg);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::InvalidArgument); // not descending
    }
}

TEST_CASE("deep tail is flagged, not thrown")
{
    const auto t = EigenSpectrum::correlation({2.3, 0.5, 0.2});
    const auto r = EigenSpectrum::correlation({2.7, 0.2, 0.1});
    const auto res = outage_exact(ChannelScenario::full(t, r), SystemConfig(3, 3, 2.0, 30.0));
    CHECK(res.below_floor);
    CHECK(res.probability >= 0.0);
    CHECK(res.probability < 1e-13);
}

TEST_CASE("binary128 full-correlation transform matches double where double is well conditioned")
{
    const auto t = EigenSpectrum::correlation({2.3, 0.5, 0.2});
    const auto r = EigenSpectrum::correlation({2.7, 0.2, 0.1});
    const SystemConfig cfg(3, 3, 2.0, 0.0);
    for (cplx s : {cplx(1.0, 0.0), cplx(0.5, 1.0), cplx(0.5, 7.0), cplx(0.5, 40.0)})
    {
        const cplx d = phi_full(s, cfg, t, r, SumMode::Compensated, Precision::Double);
        const cplx q = phi_full(s, cfg, t, r, SumMode::Compensated, Precision::Quad);
        CHECK(std::abs(d - q) <= 1e-11 * std::abs(q));
    }
}

TEST_CASE("nearly repeated eigenvalues: self-test catches double, binary128 recovers")
{
    // transmit gap 6.3e-4: the determinant cancels about 15 digits at 30 dB
    const auto t = EigenSpectrum::correlation({1.25114, 1.25051, 0.49835});
    const auto r = EigenSpectrum::correlation({1.17306, 0.964225, 0.862715});
    const auto sc = ChannelScenario::full(t, r);
    const SystemConfig cfg(3, 3, 2.0, 30.0);
    CHECK(std::abs(phi_for(sc, cfg, SumMode::Compensated, Precision::Double)(1.0) - 1.0) > 1e-8);
    CHECK(std::abs(phi_for(sc, cfg)(1.0) - 1.0) < 1e-12);

    ExactOptions plain;
    plain.extended_precision = false;
    const SystemConfig low(3, 3, 2.0, 0.0);
    const auto d = outage_exact(sc, low, plain);
    CHECK_FALSE(d.converged); // reports the loss instead of a tight error
    const auto a = outage_exact(sc, low);
    CHECK(a.converged);
    CHECK(a.err_estimate < 1e-12);
    CHECK(std::abs(d.probability - a.probability) <= d.err_estimate);
}

TEST_CASE("full-correlation CDF is smooth as two eigenvalues merge")
{
    // p is symmetric in the eigenvalues, so p(gap) = p(0) + O(gap^2)
    const auto r = EigenSpectrum::correlation({1.17306, 0.964225, 0.862715});
    const SystemConfig cfg(3, 3, 2.0, 5.0);
    auto p = [&](double gap) {
        const auto t = EigenSpectrum::correlation({1.25 + gap / 2, 1.25 - gap / 2, 0.5});
        const auto res = outage_exact(ChannelScenario::full(t, r), cfg);
        CHECK(res.converged);
        return res.probability;
    };
    const double p1 = p(1e-3), p2 = p(2e-3), p4 = p(4e-3);
    // second differences in gap^2: (p4 - p2) = 4 (p2 - p1) up to higher order
    CHECK(std::abs(p2 - p1) < 1e-5 * p1);
    CHECK((p4 - p2) == doctest::Approx(4.0 * (p2 - p1)).epsilon(0.05));
}
