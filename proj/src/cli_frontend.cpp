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


#include "mimo/cli_frontend.hpp"
#include "mimo/monte_carlo.hpp"
#include "mimo/outage_asymptotic.hpp"
#include "mimo/outage_exact.hpp"
#include "mimo/parallel.hpp"
#include "mimo/residue_kernel.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

namespace mimo
{
    namespace
    {
        using nlohmann::json;

        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t");
            if (b == std::string::npos)
                return "";
            const auto e = s.find_last_not_of(" \t");
            return s.substr(b, e - b + 1);
        }

        std::vector<std::string> split(const std::string &text, char sep)
        {
            std::vector<std::string> parts;
            std::string cur;
            std::istringstream in(text);
            while (std::getline(in, cur, sep))
                parts.push_back(trim(cur));
            if (!text.empty() && text.back() == sep)
                parts.emplace_back();
            return parts;
        }

        double parse_real(const std::string &token)
        {
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(token, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (token.empty() || used != token.size() || !std::isfinite(v))
                throw Error(ErrorCode::InvalidArgument, "not a number: '" + token + "'");
            return v;
        }

        std::string fmt(double v, int digits = 12)
        {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.*g", digits, v);
            return buf;
        }

        std::string join(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + fmt(v[i]);
            return s;
        }
    } // namespace

    std::vector<double> parse_range(const std::string &text)
    {
        const auto parts = split(text, ':');
        if (parts.size() == 1)
            return parse_real_list(text);
        if (parts.size() != 3)
            throw Error(ErrorCode::InvalidArgument, "range must be 'a:b:step' or a single value: '" + text + "'");
        const double a = parse_real(parts[0]);
        const double b = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step > 0.0))
            throw Error(ErrorCode::InvalidArgument, "range step must be positive: '" + text + "'");
        if (b < a)
            throw Error(ErrorCode::InvalidArgument, "empty range: '" + text + "'");
        std::vector<double> out;
        // index-based so that 0:30:0.1 does not drift
        const auto count = static_cast<long>(std::floor((b - a) / step + 1e-9));
        for (long k = 0; k <= count; ++k)
            out.push_back(a + static_cast<double>(k) * step);
        return out;
    }

    std::vector<double> parse_real_list(const std::string &text)
    {
        if (trim(text).empty())
            throw Error(ErrorCode::InvalidArgument, "empty list");
        std::vector<double> out;
        for (const auto &tok : split(text, ','))
            out.push_back(parse_real(tok));
        return out;
    }

    // ---- verify suite ----------------------------------------------------------

    namespace
    {
        double rel_gap(double a, double b)
        {
            const double scale = std::max(std::abs(a), std::abs(b));
            return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
        }

        CheckRecord make_record(const std::string &name, double worst, double tol, const std::string &detail)
        {
            CheckRecord r;
            r.name = name;
            r.worst = worst;
            r.passed = worst <= tol;
            r.detail = detail + " (worst " + fmt(worst, 3) + ", tol " + fmt(tol, 3) + ")";
            return r;
        }

        using CheckFn = std::function<std::vector<CheckRecord>(bool fault)>;

        std::vector<CheckRecord> check_remark1(bool fault)
        {
            double worst = 0.0;
            for (auto [nt, nr] : {std::pair{1, 1}, {2, 2}, {3, 2}, {3, 3}})
                for (double rate : {0.5, 1.0, 2.0, 4.0})
                {
                    const SystemConfig cfg(nt, nr, rate, 0.0);
                    const double direct = evaluate(g_n_full(std::vector<int>(static_cast<std::size_t>(nr), 0), cfg),
                                                   cfg.threshold());
                    const double perm = g0_via_permutation_identity(cfg) * (fault ? 1.000001 : 1.0);
                    worst = std::max(worst, rel_gap(direct, perm));
                }
            return {make_record("remark1", worst, 1e-10, "16 (dims, rate) pairs")};
        }

        std::vector<CheckRecord> check_lemma1(bool fault)
        {
            std::vector<CheckRecord> out;
            for (int n = 1; n <= 4; ++n)
                out.push_back(lemma1_reduction_check(n, 100, 1, fault ? 1 : 0));
            return out;
        }

        std::vector<CheckRecord> check_phi1(bool fault)
        {
            const double target = fault ? 1.000001 : 1.0;
            const auto t3 = EigenSpectrum::correlation({1.5, 1.0, 0.5});
            const auto r2 = EigenSpectrum::correlation({1.4, 0.6});
            const auto t4 = EigenSpectrum::correlation({2.3, 0.5, 0.2});
            const auto r3 = EigenSpectrum::correlation({2.7, 0.2, 0.1});
            struct Case
            {
                ChannelScenario sc;
                int nt, nr;
            };
            const std::vector<Case> cases = {
                {ChannelScenario::independent(3, 2), 3, 2}, {ChannelScenario::independent(2, 3), 2, 3},
                {ChannelScenario::semi_rx(3, r2), 3, 2}, {ChannelScenario::semi_tx(t3, 2), 3, 2},
                {ChannelScenario::full(t3, r2), 3, 2},     {ChannelScenario::full(t4, r3), 3, 3},
            };
            double worst = 0.0;
            for (const auto &c : cases)
                for (double db : {0.0, 10.0})
                {
                    const SystemConfig cfg(c.nt, c.nr, 2.0, db);
                    const cplx v = phi_for(c.sc, cfg)(cplx(1.0, 0.0));
                    worst = std::max(worst, std::abs(v - target));
                }
            return {make_record("phi1", worst, 1e-8, "all models, 12 configurations")};
        }

        std::vector<CheckRecord> check_convexity(bool fault)
        {
            std::vector<double> grid = parse_range("0.25:6:0.25");
            std::vector<CheckRecord> out;
            for (auto [nt, nr] : {std::pair{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}})
            {
                const std::string name = "convexity_g0_" + std::to_string(nt) + "x" + std::to_string(nr);
                std::function<double(double)> k = g0_of_rate(nt, nr);
                if (fault)
                    k = [](double rate) { return std::log1p(rate); };
                out.push_back(convexity_scan(k, grid, name));
            }
            // the detector must reject a concave probe
            CheckRecord neg = convexity_scan([](double rate) { return std::sqrt(rate); }, grid, "convexity_negative");
            neg.passed = !neg.passed;
            neg.detail = neg.passed ? "concave probe rejected" : "concave probe accepted";
            out.push_back(neg);
            return out;
        }

        std::vector<CheckRecord> check_majorization(bool fault)
        {
            std::vector<CheckRecord> out;
            const std::vector<std::vector<double>> t = {{1, 1, 1}, {2.3, 0.5, 0.2}, {2.7, 0.2, 0.1}};
            const std::vector<std::vector<double>> x = {{1, 1, 1}, {2.6, 0.2, 0.2}, {2.9, 0.07, 0.03}};
            const SystemConfig cfg(3, 3, 2.0, 15.0);
            const auto r = EigenSpectrum::correlation({2.7, 0.2, 0.1});

            auto chain = [&](const std::vector<std::vector<double>> &v, const std::string &name,
                             const std::function<double(const std::vector<double> &)> &factor) {
                bool ok = true;
                std::string detail;
                for (std::size_t k = 0; k + 1 < v.size(); ++k)
                {
                    const auto &lo = fault ? v[k + 1] : v[k];
                    const auto &hi = fault ? v[k] : v[k + 1];
                    const bool forward = majorizes(lo, hi);
                    const double f_lo = factor(lo), f_hi = factor(hi);
                    ok = ok && forward && f_lo < f_hi;
                    detail += fmt(f_lo, 6) + " < " + fmt(f_hi, 6) + "; ";
                }
                CheckRecord rec;
                rec.name = name;
                rec.passed = ok;
                rec.detail = detail;
                return rec;
            };
            out.push_back(chain(t, "majorization_correlation", [&](const std::vector<double> &v) {
                return spatial_correlation_factor(EigenSpectrum::correlation(v), r, cfg);
            }));
            out.push_back(chain(x, "majorization_power", [&](const std::vector<double> &v) {
                return power_allocation_factor(EigenSpectrum::power(v), cfg).value;
            }));
            const double p1 = power_allocation_factor(EigenSpectrum::power(x[0]), cfg).value;
            out.push_back(make_record("power_equal_allocation", std::abs(p1 - 1.0), 0.0, "P at equal power"));
            return out;
        }

        std::vector<CheckRecord> check_embedding(bool fault)
        {
            std::vector<CheckRecord> out;
            for (auto [nt, nr] : {std::pair{1, 1}, {2, 2}, {3, 2}})
                out.push_back(special_case_embedding_check(SystemConfig(nt, nr, 2.0, 20.0), fault ? 1.001 : 1.0));
            return out;
        }

        std::vector<CheckRecord> check_diversity(bool fault)
        {
            const auto t = EigenSpectrum::correlation({1.5, 1.0, 0.5});
            const auto r = EigenSpectrum::correlation({1.4, 0.6});
            double worst = 0.0;
            for (const auto &sc : {ChannelScenario::independent(3, 2), ChannelScenario::semi_tx(t, 2),
                                   ChannelScenario::semi_rx(3, r), ChannelScenario::full(t, r)})
            {
                const SystemConfig lo(3, 2, 2.0, 60.0), hi(3, 2, 2.0, 80.0);
                const double slope = (std::log10(outage_asymptotic(sc, hi).probability) -
                                      std::log10(outage_asymptotic(sc, lo).probability)) /
                                     2.0;
                worst = std::max(worst, std::abs(slope + 6.0 + (fault ? 1e-3 : 0.0)));
            }
            return {make_record("diversity_order", worst, 1e-6, "slope of 3x2 asymptotes, 60 to 80 dB")};
        }

        std::vector<CheckRecord> check_interchange(bool fault)
        {
            double worst = 0.0;
            for (double db : {0.0, 10.0})
            {
                const double a = outage_independent(SystemConfig(3, 2, 2.0, db)).probability;
                const double b = outage_independent(SystemConfig(2, 3, 2.0, db)).probability;
                worst = std::max(worst, std::abs(a - b * (fault ? 1.001 : 1.0)));
            }
            return {make_record("interchange", worst, 1e-9, "independent 3x2 against 2x3")};
        }

        std::vector<CheckRecord> check_oracle(bool fault)
        {
            constexpr std::uint64_t n = 200000;
            const auto t = EigenSpectrum::correlation({2.3, 0.5, 0.2});
            const auto r = EigenSpectrum::correlation({2.7, 0.2, 0.1});
            struct Case
            {
                ChannelScenario sc;
                SystemConfig cfg;
            };
            const std::vector<Case> cases = {{ChannelScenario::independent(3, 2), SystemConfig(3, 2, 2.0, 5.0)},
                                             {ChannelScenario::full(t, r), SystemConfig(3, 3, 2.0, 5.0)}};
            double worst = 0.0;
            for (const auto &c : cases)
            {
                const double p = outage_exact(c.sc, c.cfg).probability * (fault ? 1.5 : 1.0);
                const McEstimate mc = estimate_outage(c.sc, c.cfg, n, 7);
                const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
                worst = std::max(worst, std::abs(mc.p_hat - p) / se);
            }
            return {make_record("oracle_mc", worst, 3.0, "exact against 2e5 Monte Carlo draws, in standard errors")};
        }

        const std::vector<std::pair<std::string, CheckFn>> &suite()
        {
            static const std::vector<std::pair<std::string, CheckFn>> s = {
                {"remark1", check_remark1},         {"lemma1", check_lemma1},
                {"phi1", check_phi1},               {"convexity", check_convexity},
                {"majorization", check_majorization}, {"embedding", check_embedding},
                {"diversity", check_diversity},     {"interchange", check_interchange},
                {"oracle", check_oracle},
            };
            return s;
        }
    } // namespace

    const std::vector<std::string> &verify_check_names()
    {
        static const std::vector<std::string> names = [] {
            std::vector<std::string> v;
            for (const auto &[name, fn] : suite())
                v.push_back(name);
            return v;
        }();
        return names;
    }

    std::vector<CheckRecord> run_verify_suite(const std::vector<std::string> &only,
                                              const std::vector<std::string> &fault)
    {
        const auto &names = verify_check_names();
        for (const auto *list : {&only, &fault})
            for (const auto &n : *list)
                if (std::find(names.begin(), names.end(), n) == names.end())
                    throw Error(ErrorCode::InvalidArgument, "unknown check '" + n + "'");
        std::vector<CheckRecord> out;
        for (const auto &[name, fn] : suite())
        {
            if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end())
                continue;
            const bool inject = std::find(fault.begin(), fault.end(), name) != fault.end();
            try
            {
                for (auto &rec : fn(inject))
                    out.push_back(std::move(rec));
            }
            catch (const std::exception &e)
            {
                CheckRecord rec;
                rec.name = name;
                rec.passed = false;
                rec.detail = std::string("threw: ") + e.what();
                out.push_back(rec);
            }
        }
        return out;
    }

    // ---- commands ---------------------------------------------------------------

    namespace
    {
        struct Settings
        {
            std::string model = "ind";
            int n_t = 1;
            int n_r = 1;
            double rate = 1.0;
            std::string snr_db = "0";
            std::string t_eigs, r_eigs, x_eigs; // empty: identity
            bool renormalize = false;
            std::string methods = "exact";
            std::uint64_t samples = default_mc_samples;
            std::uint64_t seed = 1;
        };

        std::string list_or_string(const json &v, const std::string &key)
        {
            if (v.is_string())
                return v.get<std::string>();
            if (v.is_number())
                return fmt(v.get<double>(), 17);
            if (v.is_array())
            {
                std::string s;
                for (std::size_t i = 0; i < v.size(); ++i)
                {
                    s += i ? "," : "";
                    s += v[i].is_string() ? v[i].get<std::string>() : fmt(v[i].get<double>(), 17);
                }
                return s;
            }
            throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' has the wrong type");
        }

        // Fills every field whose flag was not given on the command line.
        void apply_config(const std::string &path, Settings &s, const std::function<bool(const std::string &)> &given)
        {
            std::ifstream in(path);
            if (!in)
                throw Error(ErrorCode::InvalidArgument, "cannot open config file '" + path + "'");
            json doc;
            try
            {
                doc = json::parse(in);
            }
            catch (const json::exception &e)
            {
                throw Error(ErrorCode::InvalidArgument, "config file '" + path + "': " + e.what());
            }
            if (!doc.is_object())
                throw Error(ErrorCode::InvalidArgument, "config file must hold a JSON object");
            for (const auto &[key, v] : doc.items())
            {
                try
                {
                    if (key == "model")
                    {
                        if (!given("--model"))
                            s.model = v.get<std::string>();
                    }
                    else if (key == "n_t")
                    {
                        if (!given("--nt"))
                            s.n_t = v.get<int>();
                    }
                    else if (key == "n_r")
                    {
                        if (!given("--nr"))
                            s.n_r = v.get<int>();
                    }
                    else if (key == "rate")
                    {
                        if (!given("--rate"))
                            s.rate = v.get<double>();
                    }
                    else if (key == "snr_db")
                    {
                        if (!given("--snr-db"))
                            s.snr_db = list_or_string(v, key);
                    }
                    else if (key == "t_eigs")
                    {
                        if (!given("--t-eigs"))
                            s.t_eigs = list_or_string(v, key);
                    }
                    else if (key == "r_eigs")
                    {
                        if (!given("--r-eigs"))
                            s.r_eigs = list_or_string(v, key);
                    }
                    else if (key == "x_eigs")
                    {
                        if (!given("--x-eigs"))
                            s.x_eigs = list_or_string(v, key);
                    }
                    else if (key == "renormalize")
                    {
                        if (!given("--renormalize"))
                            s.renormalize = v.get<bool>();
                    }
                    else if (key == "methods")
                    {
                        if (!given("--methods"))
                            s.methods = list_or_string(v, key);
                    }
                    else if (key == "samples")
                    {
                        if (!given("--samples"))
                            s.samples = v.get<std::uint64_t>();
                    }
                    else if (key == "seed")
                    {
                        if (!given("--seed"))
                            s.seed = v.get<std::uint64_t>();
                    }
                    else
                        throw Error(ErrorCode::InvalidArgument, "unknown config key '" + key + "'");
                }
                catch (const json::exception &)
                {
                    throw Error(ErrorCode::InvalidArgument, "config key '" + key + "' has the wrong type");
                }
            }
        }

        ChannelScenario build_scenario(const Settings &s)
        {
            auto corr = [&](const std::string &text) {
                return EigenSpectrum::correlation(parse_real_list(text), s.renormalize);
            };
            auto forbid = [&](const std::string &text, const char *flag) {
                if (!text.empty())
                    throw Error(ErrorCode::InvalidArgument,
                                std::string(flag) + " does not apply to model '" + s.model + "'");
            };
            ChannelScenario sc;
            if (s.model == "ind")
            {
                forbid(s.t_eigs, "--t-eigs");
                forbid(s.r_eigs, "--r-eigs");
                sc = ChannelScenario::independent(s.n_t, s.n_r);
            }
            else if (s.model == "semi-rx")
            {
                forbid(s.t_eigs, "--t-eigs");
                if (s.r_eigs.empty())
                    throw Error(ErrorCode::InvalidArgument, "model 'semi-rx' needs --r-eigs");
                sc = ChannelScenario::semi_rx(s.n_t, corr(s.r_eigs));
            }
            else if (s.model == "semi-tx")
            {
                forbid(s.r_eigs, "--r-eigs");
                if (s.t_eigs.empty())
                    throw Error(ErrorCode::InvalidArgument, "model 'semi-tx' needs --t-eigs");
                sc = ChannelScenario::semi_tx(corr(s.t_eigs), s.n_r);
            }
            else if (s.model == "full")
            {
                if (s.t_eigs.empty() || s.r_eigs.empty())
                    throw Error(ErrorCode::InvalidArgument, "model 'full' needs --t-eigs and --r-eigs");
                sc = ChannelScenario::full(corr(s.t_eigs), corr(s.r_eigs));
            }
            else
                throw Error(ErrorCode::InvalidArgument,
                            "unknown model '" + s.model + "' (ind, semi-rx, semi-tx, full)");
            if (!s.x_eigs.empty())
                sc = sc.with_power(EigenSpectrum::power(parse_real_list(s.x_eigs), s.renormalize));
            return sc;
        }

        std::vector<Method> parse_methods(const std::string &text)
        {
            std::vector<Method> out;
            for (const auto &tok : split(text, ','))
            {
                Method m;
                if (tok == "exact")
                    m = Method::Exact;
                else if (tok == "asym")
                    m = Method::Asymptotic;
                else if (tok == "mc")
                    m = Method::MonteCarlo;
                else
                    throw Error(ErrorCode::InvalidArgument, "unknown method '" + tok + "' (exact, asym, mc)");
                if (std::find(out.begin(), out.end(), m) == out.end())
                    out.push_back(m);
            }
            if (out.empty())
                throw Error(ErrorCode::InvalidArgument, "no methods given");
            return out;
        }

        struct Row
        {
            double snr_db;
            double probability;
            double err;
            Method method;
            bool below_floor;
        };

        // Validates the whole request before computing anything, so a bad
        // point late in a sweep cannot leave a half-written table.
        void run_table(const std::string &command, const Settings &s, std::ostream &out)
        {
            const ChannelScenario sc = build_scenario(s);
            const std::vector<double> snrs = parse_range(s.snr_db);
            const std::vector<Method> methods = parse_methods(s.methods);
            validate_scenario(sc, SystemConfig(s.n_t, s.n_r, s.rate, snrs.front()));
            const bool uses_mc = std::find(methods.begin(), methods.end(), Method::MonteCarlo) != methods.end();
            if (uses_mc && s.samples == 0)
                throw Error(ErrorCode::InvalidArgument, "--samples must be positive");

            std::vector<Row> rows;
            for (double db : snrs)
            {
                const SystemConfig cfg(s.n_t, s.n_r, s.rate, db);
                for (Method m : methods)
                {
                    Row row{db, 0.0, 0.0, m, false};
                    if (m == Method::Exact)
                    {
                        const OutageResult r = outage_exact(sc, cfg);
                        row.probability = r.probability;
                        row.err = r.err_estimate;
                        row.below_floor = r.below_floor;
                    }
                    else if (m == Method::Asymptotic)
                    {
                        row.probability = outage_asymptotic(sc, cfg).probability;
                    }
                    else
                    {
                        const McEstimate e = estimate_outage(sc, cfg, s.samples, s.seed);
                        row.probability = e.p_hat;
                        row.err = e.std_err;
                    }
                    rows.push_back(row);
                }
            }

            out << "# mimo_outage " << command << "\n";
            out << "# t_eigs=" << (s.t_eigs.empty() ? "identity" : join(sc.t_spectrum.values()))
                << " r_eigs=" << (s.r_eigs.empty() ? "identity" : join(sc.r_spectrum.values()))
                << " x_eigs=" << (s.x_eigs.empty() ? "identity" : join(sc.x_spectrum.values())) << "\n";
            if (uses_mc)
                out << "# mc samples=" << s.samples << " seed=" << s.seed << "\n";
            std::vector<double> floor_points;
            for (const auto &r : rows)
                if (r.below_floor)
                    floor_points.push_back(r.snr_db);
            if (!floor_points.empty())
                out << "# exact values below " << fmt(exact_probability_floor, 3)
                    << " are rounding-limited at snr_db=" << join(floor_points) << "\n";
            out << "model,n_t,n_r,rate,snr_db,probability,err_estimate,method\n";
            for (const auto &r : rows)
                out << to_string(sc.model) << ',' << s.n_t << ',' << s.n_r << ',' << fmt(s.rate) << ','
                    << fmt(r.snr_db) << ',' << fmt(r.probability) << ',' << fmt(r.err, 3) << ','
                    << to_string(r.method) << '\n';
        }

        void run_gain(const std::string &dims_text, const std::string &rates_text, std::ostream &out)
        {
            std::vector<std::pair<int, int>> dims;
            for (const auto &tok : split(dims_text, ','))
            {
                const auto x = tok.find('x');
                int nt = 0, nr = 0;
                try
                {
                    std::size_t u1 = 0, u2 = 0;
                    nt = std::stoi(tok.substr(0, x), &u1);
                    nr = std::stoi(tok.substr(x + 1), &u2);
                    if (x == std::string::npos || u1 != x || u2 != tok.size() - x - 1)
                        nt = 0;
                }
                catch (const std::exception &)
                {
                    nt = 0;
                }
                if (nt < 1 || nr < 1)
                    throw Error(ErrorCode::InvalidArgument, "dimensions must look like 3x2: '" + tok + "'");
                dims.emplace_back(nt, nr);
            }
            const std::vector<double> rates = parse_range(rates_text);
            std::vector<std::vector<double>> table;
            for (double rate : rates)
            {
                std::vector<double> row;
                for (auto [nt, nr] : dims)
                    row.push_back(coding_gain(SystemConfig(nt, nr, rate, 0.0)));
                table.push_back(row);
            }
            out << "# mimo_outage gain: C(R) = g_0(R)^(-1/(n_t n_r))\n";
            out << "rate";
            for (auto [nt, nr] : dims)
                out << ",C_" << nt << 'x' << nr;
            out << '\n';
            for (std::size_t i = 0; i < rates.size(); ++i)
            {
                out << fmt(rates[i]);
                for (double v : table[i])
                    out << ',' << fmt(v);
                out << '\n';
            }
        }

        int run_verify(const std::vector<std::string> &only, const std::string &format, std::ostream &out)
        {
            std::vector<std::string> fault;
            if (const char *env = std::getenv("MIMO_OUTAGE_VERIFY_FAULT"); env && *env)
                for (const auto &tok : split(env, ','))
                    if (!tok.empty())
                        fault.push_back(tok);
            const auto records = run_verify_suite(only, fault);
            int failed = 0;
            for (const auto &r : records)
                failed += r.passed ? 0 : 1;
            if (format == "json")
            {
                json doc = json::array();
                for (const auto &r : records)
                    doc.push_back({{"name", r.name}, {"passed", r.passed}, {"worst", r.worst}, {"detail", r.detail}});
                out << doc.dump(2) << '\n';
            }
            else
            {
                for (const auto &r : records)
                    out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                out << records.size() << " checks, " << failed << " failed\n";
            }
            return failed == 0 ? exit_ok : exit_verification_failed;
        }
    } // namespace

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Outage probability of Kronecker-correlated Rayleigh MIMO channels", "mimo_outage"};
        app.require_subcommand(1);
        int threads = 0;
        app.add_option("--threads", threads, "worker threads (overrides MIMO_OUTAGE_THREADS)")
            ->check(CLI::NonNegativeNumber);

        Settings s;
        std::string config_path, out_path;
        auto add_common = [&](CLI::App *sub, bool with_methods) {
            sub->add_option("--config", config_path, "JSON configuration file (flags take precedence)");
            sub->add_option("--model", s.model, "ind, semi-rx, semi-tx or full");
            sub->add_option("--nt", s.n_t, "transmit antennas");
            sub->add_option("--nr", s.n_r, "receive antennas");
            sub->add_option("--rate", s.rate, "target rate in bits/s/Hz");
            sub->add_option("--snr-db", s.snr_db, "SNR in dB: a value, a comma list or a:b:step");
            sub->add_option("--t-eigs", s.t_eigs, "transmit correlation eigenvalues, comma-separated, descending");
            sub->add_option("--r-eigs", s.r_eigs, "receive correlation eigenvalues");
            sub->add_option("--x-eigs", s.x_eigs, "input covariance diagonal (power allocation)");
            sub->add_flag("--renormalize", s.renormalize, "rescale spectra to the required trace");
            sub->add_option("--out", out_path, "write CSV to this file instead of stdout");
            if (with_methods)
            {
                sub->add_option("--methods", s.methods, "comma-separated subset of exact, asym, mc");
                sub->add_option("--samples", s.samples, "Monte Carlo draws per point");
                sub->add_option("--seed", s.seed, "Monte Carlo seed");
            }
        };
        CLI::App *exact = app.add_subcommand("exact", "exact outage probability as CSV rows");
        add_common(exact, false);
        CLI::App *sweep = app.add_subcommand("sweep", "outage against SNR for several methods");
        add_common(sweep, true);

        CLI::App *gain = app.add_subcommand("gain", "coding and modulation gain against rate");
        std::string dims = "1x1,2x2,3x3,3x2", rates = "0.5:6:0.25";
        gain->add_option("--dims", dims, "comma-separated n_t x n_r pairs, e.g. 3x2");
        gain->add_option("--rate", rates, "rates a:b:step");
        gain->add_option("--out", out_path, "write CSV to this file instead of stdout");

        CLI::App *verify = app.add_subcommand("verify", "run the property and oracle checks");
        std::string only_text, format = "text";
        verify->add_option("--only", only_text, "comma-separated check names: " + [] {
            std::string n;
            for (const auto &x : verify_check_names())
                n += (n.empty() ? "" : ",") + x;
            return n;
        }());
        verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::Success &e)
        {
            out << app.help();
            return exit_ok;
        }
        catch (const CLI::ParseError &e)
        {
            err << "mimo_outage: " << e.what() << '\n';
            return exit_usage;
        }

        if (threads > 0)
            set_worker_override(threads);

        try
        {
            std::ofstream file;
            auto sink = [&]() -> std::ostream & {
                if (out_path.empty())
                    return out;
                file.open(out_path);
                if (!file)
                    throw Error(ErrorCode::InvalidArgument, "cannot write '" + out_path + "'");
                return file;
            };

            if (exact->parsed() || sweep->parsed())
            {
                CLI::App *sub = exact->parsed() ? exact : sweep;
                if (!config_path.empty())
                    apply_config(config_path, s, [&](const std::string &flag) {
                        // sweep-only keys are ignored by exact
                        const CLI::Option *o = sub->get_option_no_throw(flag);
                        return o != nullptr && o->count() > 0;
                    });
                if (exact->parsed())
                    s.methods = "exact";
                std::ostringstream buf;
                run_table(sub->get_name(), s, buf);
                sink() << buf.str();
                return exit_ok;
            }
            if (gain->parsed())
            {
                std::ostringstream buf;
                run_gain(dims, rates, buf);
                sink() << buf.str();
                return exit_ok;
            }
            std::vector<std::string> only;
            if (!only_text.empty())
                for (const auto &tok : split(only_text, ','))
                    only.push_back(tok);
            return run_verify(only, format, out);
        }
        catch (const Error &e)
        {
            err << "mimo_outage: " << to_string(e.code()) << ": " << e.what() << '\n';
            return e.code() == ErrorCode::NumericalFailure ? exit_verification_failed : exit_usage;
        }
        catch (const std::exception &e)
        {
            err << "mimo_outage: " << e.what() << '\n';
            return exit_usage;
        }
    }

} // namespace mimo
