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

#include "mimo/monte_carlo.hpp"
#include "mimo/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace mimo
{
    std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c, std::array<std::uint32_t, 2> k)
    {
        constexpr std::uint64_t m0 = 0xD2511F53u;
        constexpr std::uint64_t m1 = 0xCD9E8D57u;
        constexpr std::uint32_t w0 = 0x9E3779B9u;
        constexpr std::uint32_t w1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round)
        {
            const std::uint64_t p0 = m0 * c[0];
            const std::uint64_t p1 = m1 * c[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
            c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
            k[0] += w0;
            k[1] += w1;
        }
        return c;
    }

    cplx McStream::next_cn()
    {
        const auto out = philox4x32({static_cast<std::uint32_t>(sample_), static_cast<std::uint32_t>(sample_ >> 32),
                                     draw_++, 0u},
                                    {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
        constexpr double scale = 0x1p-53;
        const std::uint64_t a = ((static_cast<std::uint64_t>(out[0]) << 32) | out[1]) >> 11;
        const std::uint64_t b = ((static_cast<std::uint64_t>(out[2]) << 32) | out[3]) >> 11;
        const double u1 = (static_cast<double>(a) + 1.0) * scale; // (0, 1]
        const double u2 = static_cast<double>(b) * scale;
        // each component N(0, 1/2)
        const double radius = std::sqrt(-std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    namespace
    {
        // no heap traffic per sample for desk-scale arrays
        using SmallMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, 0, 8, 8>;

        template <class M>
        double log2_det_hpd(const M &a)
        {
            Eigen::LLT<M> llt(a);
            if (llt.info() != Eigen::Success)
                throw Error(ErrorCode::NumericalFailure, "I + rho H R_x H^H is not positive definite");
            double acc = 0.0;
            const auto &l = llt.matrixLLT();
            for (Eigen::Index i = 0; i < a.rows(); ++i)
                acc += std::log2(l(i, i).real());
            return 2.0 * acc;
        }

        McEstimate finish(std::uint64_t hits, std::uint64_t n, std::uint64_t seed)
        {
            McEstimate e;
            e.n_samples = n;
            e.seed = seed;
            e.p_hat = static_cast<double>(hits) / static_cast<double>(n);
            e.std_err = std::sqrt(e.p_hat * (1.0 - e.p_hat) / static_cast<double>(n));
            return e;
        }

        constexpr std::size_t samples_per_chunk = 8192;

        // Counts outages over n samples; draw(sample_index, out) fills one H.
        template <class Draw, class Info>
        std::uint64_t count_outages(std::uint64_t n, double rate, Draw draw, Info info)
        {
            const std::size_t chunks = (static_cast<std::size_t>(n) + samples_per_chunk - 1) / samples_per_chunk;
            std::vector<std::uint64_t> hits(chunks, 0);
            parallel_chunks(static_cast<std::size_t>(n), samples_per_chunk,
                            [&](std::size_t chunk, std::size_t begin, std::size_t end) {
                                std::uint64_t h = 0;
                                for (std::size_t k = begin; k < end; ++k)
                                    h += info(draw(static_cast<std::uint64_t>(k))) < rate ? 1u : 0u;
                                hits[chunk] = h;
                            });
            std::uint64_t total = 0;
            for (auto h : hits)
                total += h;
            return total;
        }

        void check_square(const CMatrix &m, int n, const char *what)
        {
            if (m.rows() != n || m.cols() != n)
                throw Error(ErrorCode::DimensionMismatch, std::string(what) + " must be " + std::to_string(n) + "x" +
                                                              std::to_string(n));
        }
    } // namespace

    CMatrix sample_channel(const ChannelScenario &scenario, const SystemConfig &cfg, McStream &stream)
    {
        const ChannelScenario sc = validate_scenario(scenario, cfg);
        CMatrix h(cfg.n_r(), cfg.n_t());
        for (int j = 0; j < cfg.n_t(); ++j)
            for (int i = 0; i < cfg.n_r(); ++i)
                h(i, j) = std::sqrt(sc.r_spectrum[i] * sc.t_spectrum[j]) * stream.next_cn();
        return h;
    }

    double mutual_information(const CMatrix &h, double rho, const EigenSpectrum &x)
    {
        const Eigen::Index nr = h.rows();
        const Eigen::Index nt = h.cols();
        if (x.size() != 0 && x.size() != nt)
            throw Error(ErrorCode::DimensionMismatch, "input covariance length differs from n_t");
        CMatrix hx = h;
        if (x.size() != 0)
            for (Eigen::Index j = 0; j < nt; ++j)
                hx.col(j) *= std::sqrt(x[static_cast<int>(j)]);
        CMatrix a = CMatrix::Identity(nr, nr);
        a.noalias() += rho * hx * hx.adjoint();
        return log2_det_hpd(a);
    }

    double mutual_information(const CMatrix &h, double rho, const CMatrix &rx)
    {
        check_square(rx, static_cast<int>(h.cols()), "R_x");
        CMatrix a = CMatrix::Identity(h.rows(), h.rows());
        a.noalias() += rho * h * rx * h.adjoint();
        return log2_det_hpd(a);
    }

    McEstimate estimate_outage(const ChannelScenario &scenario, const SystemConfig &cfg, std::uint64_t n_samples,
                               std::uint64_t seed)
    {
        if (n_samples == 0)
            throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one sample");
        const ChannelScenario sc = validate_scenario(scenario, cfg);
        const int nt = cfg.n_t();
        const int nr = cfg.n_r();
        if (nt > 8 || nr > 8)
            throw Error(ErrorCode::InvalidArgument, "Monte Carlo supports at most 8 antennas per side");
        // column scale sqrt(t_j x_j) folds R_x into H for aligned diagonal matrices
        std::vector<double> col(static_cast<std::size_t>(nt)), row(static_cast<std::size_t>(nr));
        for (int j = 0; j < nt; ++j)
            col[static_cast<std::size_t>(j)] = std::sqrt(sc.t_spectrum[j] * sc.x_spectrum[j]);
        for (int i = 0; i < nr; ++i)
            row[static_cast<std::size_t>(i)] = std::sqrt(sc.r_spectrum[i]);
        const double rho = cfg.rho();

        auto draw = [&](std::uint64_t k) {
            McStream stream(seed, k);
            SmallMatrix h(nr, nt);
            for (int j = 0; j < nt; ++j)
                for (int i = 0; i < nr; ++i)
                    h(i, j) = row[static_cast<std::size_t>(i)] * col[static_cast<std::size_t>(j)] * stream.next_cn();
            return h;
        };
        auto info = [&](const SmallMatrix &h) {
            SmallMatrix a = SmallMatrix::Identity(nr, nr);
            a.noalias() += rho * h * h.adjoint();
            return log2_det_hpd(a);
        };
        return finish(count_outages(n_samples, cfg.rate(), draw, info), n_samples, seed);
    }

    McEstimate estimate_outage(const CorrelationMatrices &m, const SystemConfig &cfg, std::uint64_t n_samples,
                               std::uint64_t seed)
    {
        if (n_samples == 0)
            throw Error(ErrorCode::InvalidArgument, "Monte Carlo needs at least one sample");
        const int nt = cfg.n_t();
        const int nr = cfg.n_r();
        if (nt > 8 || nr > 8)
            throw Error(ErrorCode::InvalidArgument, "Monte Carlo supports at most 8 antennas per side");
        check_square(m.rt, nt, "R_t");
        check_square(m.rr, nr, "R_r");
        check_square(m.rx, nt, "R_x");
        const SmallMatrix rt_half = hermitian_sqrt(m.rt);
        const SmallMatrix rr_half = hermitian_sqrt(m.rr);
        const SmallMatrix rx = m.rx;
        const double rho = cfg.rho();

        auto draw = [&](std::uint64_t k) {
            McStream stream(seed, k);
            SmallMatrix w(nr, nt);
            for (int j = 0; j < nt; ++j)
                for (int i = 0; i < nr; ++i)
                    w(i, j) = stream.next_cn();
            SmallMatrix h = rr_half * w * rt_half;
            return h;
        };
        auto info = [&](const SmallMatrix &h) {
            SmallMatrix a = SmallMatrix::Identity(nr, nr);
            a.noalias() += rho * h * rx * h.adjoint();
            return log2_det_hpd(a);
        };
        return finish(count_outages(n_samples, cfg.rate(), draw, info), n_samples, seed);
    }

    CMatrix hermitian_sqrt(const CMatrix &m)
    {
        if (m.rows() != m.cols())
            throw Error(ErrorCode::DimensionMismatch, "square root needs a square matrix");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::NumericalFailure, "eigen-decomposition failed");
        Eigen::VectorXd ev = es.eigenvalues();
        const double tol = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
        for (Eigen::Index i = 0; i < ev.size(); ++i)
        {
            if (ev(i) < -tol)
                throw Error(ErrorCode::InvalidArgument, "matrix is not positive semi-definite");
            ev(i) = std::sqrt(std::max(0.0, ev(i)));
        }
        return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    }

    EigenSpectrum effective_tx_correlation(const EigenSpectrum &t, const EigenSpectrum &x)
    {
        if (t.size() != x.size())
            throw Error(ErrorCode::DimensionMismatch, "transmit and input covariance sizes differ");
        if (x.is_identity())
            return t;
        std::vector<double> prod(static_cast<std::size_t>(t.size()));
        for (int i = 0; i < t.size(); ++i)
            prod[static_cast<std::size_t>(i)] = t[i] * x[i];
        std::sort(prod.begin(), prod.end(), std::greater<>());
        return EigenSpectrum::effective(std::move(prod));
    }

    EigenSpectrum effective_tx_correlation(const CMatrix &rt, const CMatrix &rx)
    {
        check_square(rx, static_cast<int>(rt.rows()), "R_x");
        const CMatrix half = hermitian_sqrt(rt);
        const CMatrix m = half * rx * half;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw Error(ErrorCode::NumericalFailure, "eigen-decomposition failed");
        std::vector<double> v(static_cast<std::size_t>(es.eigenvalues().size()));
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
            v[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
        std::sort(v.begin(), v.end(), std::greater<>());
        return EigenSpectrum::effective(std::move(v));
    }

} // namespace mimo
