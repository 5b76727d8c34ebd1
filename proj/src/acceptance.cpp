// SPDX-License-Identifier: Apache-2.0
//
// mimosched: correlation-based user scheduling and beamforming for massive MIMO
// Copyright (C) 2026 The mimosched authors
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

#include "mimosched/acceptance.hpp"

#include "mimosched/channel.hpp"
#include "mimosched/experiment.hpp"
#include "mimosched/geometry.hpp"
#include "mimosched/metrics.hpp"
#include "mimosched/precoding.hpp"
#include "mimosched/scheduling.hpp"
#include "mimosched/spectrum.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace mimosched
{
    namespace
    {
        std::string fmt(const char *format, double v)
        {
            char buf[96];
            std::snprintf(buf, sizeof(buf), format, v);
            return buf;
        }

        // Epsilon grid of the sweep experiments; 0.02 and 0.98 are the endpoints.
        const std::vector<double> epsilon_grid = {0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.98};

        ScenarioConfig desk_config(unsigned M, unsigned K, unsigned K_s, unsigned drops)
        {
            ScenarioConfig c;
            c.M = M;
            c.K = K;
            c.K_s = K_s;
            c.drops = drops;
            c.seed = 2026;
            return c;
        }

        UserLink synthetic_user(Rng &rng, unsigned paths)
        {
            std::uniform_real_distribution<double> phi(-std::numbers::pi / 2, std::numbers::pi / 2);
            std::uniform_real_distribution<double> amp(0.5, 1.5);
            UserLink link;
            for (unsigned i = 0; i < paths; ++i)
            {
                MultipathComponent mpc;
                mpc.dod_phi = phi(rng);
                mpc.a_ga = amp(rng);
                link.mpcs.push_back(mpc);
            }
            return link;
        }

        CriterionResult szego_convergence()
        {
            CriterionResult r{1, "Szego convergence: KS(M=256) < KS(M=16) for 20 seeded 6-path users", true, ""};
            const auto t0 = std::chrono::steady_clock::now();
            double worst_16 = 1.0, worst_256 = 0.0;
            int failures = 0;
            for (unsigned seed = 0; seed < 20; ++seed)
            {
                Rng rng(1000 + seed);
                const UserLink link = synthetic_user(rng, 6);
                const auto checks = asymptotic_spectrum_check(link, 0.5, {16, 256});
                worst_16 = std::min(worst_16, checks[0].ks);
                worst_256 = std::max(worst_256, checks[1].ks);
                if (!(checks[1].ks < checks[0].ks))
                    ++failures;
            }
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            r.pass = failures == 0 && secs < 30.0;
            r.detail = "failures=" + std::to_string(failures) + " min KS(16)=" + fmt("%.4f", worst_16) +
                       " max KS(256)=" + fmt("%.4f", worst_256) + " runtime=" + fmt("%.2fs", secs) + " (limit 30s)";
            return r;
        }

        CriterionResult zf_nulling()
        {
            CriterionResult r{2, "ZF nulling on true channels; CUSBF leakage nonzero with finite positive SINR", true, ""};

            Rng rng(42);
            std::normal_distribution<double> n(0.0, std::sqrt(0.5));
            double worst_ratio = 0.0;
            for (int t = 0; t < 100; ++t)
            {
                arma::cx_mat H(4, 16);
                H.imbue([&] { return std::complex<double>(n(rng), n(rng)); });
                const arma::cx_mat W = zf_unnormalized(H);
                arma::mat leak = arma::square(arma::abs(H * W));
                leak.diag().zeros();
                const double h2 = std::pow(arma::norm(H, "fro"), 2);
                worst_ratio = std::max(worst_ratio, leak.max() / h2);
            }
            const bool true_ok = worst_ratio <= 1e-18;

            ScenarioConfig cfg = desk_config(16, 20, 4, 20);
            cfg.epsilon = 0.5;
            const double P_n = noise_power(cfg);
            int drops_used = 0, bad = 0;
            double min_leak = INFINITY;
            for (unsigned d = 0; d < cfg.drops; ++d)
            {
                const auto seed = drop_seed(cfg.seed, d);
                Rng geo = make_rng(seed, Stream::Geometry);
                Drop drop = generate_drop(cfg, geo);
                const Plan plan = plan_cusbf(build_U(drop.links, cfg), cfg);
                if (plan.schedule.selected.size() < 2)
                    continue;
                ++drops_used;
                Rng fading = make_rng(seed, Stream::Fading);
                for (auto &link : drop.links)
                    draw_small_scale(link, fading);
                const ChannelMatrix H = assemble_channel(drop.links, cfg);
                arma::cx_mat H_sel(plan.schedule.selected.size(), cfg.M);
                for (arma::uword i = 0; i < H_sel.n_rows; ++i)
                    H_sel.row(i) = H.row(plan.schedule.selected[i]);

                arma::mat leak = arma::square(arma::abs(H_sel * plan.precoder.W));
                leak.diag().zeros();
                min_leak = std::min(min_leak, leak.max());
                const auto s = sinr(H_sel, plan.precoder, P_n);
                if (!(leak.max() > 0.0) || std::any_of(s.begin(), s.end(), [](double v) { return !std::isfinite(v) || !(v > 0.0); }))
                    ++bad;
            }
            const bool cusbf_ok = drops_used > 0 && bad == 0;

            r.pass = true_ok && cusbf_ok;
            r.detail = "max leakage/||H||^2=" + fmt("%.3e", worst_ratio) + " (limit 1e-18); CUSBF drops=" +
                       std::to_string(drops_used) + " violations=" + std::to_string(bad) +
                       " min max-leakage=" + fmt("%.3e", min_leak);
            return r;
        }

        CriterionResult covariance_oracle()
        {
            CriterionResult r{3, "E{h^H h} over 1e4 fading draws matches analytic R within 5% (M=8)", true, ""};
            ScenarioConfig cfg = desk_config(8, 4, 1, 1);
            Rng geo(77);
            Drop drop = generate_drop(cfg, geo);
            UserLink link = drop.links.front();
            const CovarianceMatrix R = covariance(link, cfg);

            Rng fading(78);
            arma::cx_mat acc(cfg.M, cfg.M, arma::fill::zeros);
            const int draws = 10000;
            for (int i = 0; i < draws; ++i)
            {
                draw_small_scale(link, fading);
                const arma::cx_rowvec h = channel_row(link, cfg.M, cfg.d_over_lambda);
                acc += h.t() * h;
            }
            acc /= static_cast<double>(draws);
            const double scale = arma::abs(R).max();
            const double err = arma::abs(acc - R).max() / scale;
            r.pass = err <= 0.05;
            r.detail = "max |R_hat - R| / max|R| = " + fmt("%.4f", err) + " (limit 0.05), paths=" +
                       std::to_string(link.mpcs.size());
            return r;
        }

        SpectrumMatrix random_U(Rng &rng, unsigned K, unsigned M)
        {
            std::uniform_real_distribution<double> uni(0.0, 1.0);
            std::lognormal_distribution<double> power(0.0, 1.0);
            SpectrumMatrix U(K, M, arma::fill::zeros);
            for (unsigned k = 0; k < K; ++k)
            {
                // A few contiguous groups of bins, like clusters seen from the array.
                const unsigned groups = 1 + static_cast<unsigned>(uni(rng) * 3);
                for (unsigned g = 0; g < groups; ++g)
                {
                    const unsigned start = static_cast<unsigned>(uni(rng) * M) % M;
                    const unsigned width = 1 + static_cast<unsigned>(uni(rng) * std::max(1u, M / 8));
                    for (unsigned w = 0; w < width; ++w)
                        U(k, (start + w) % M) += power(rng);
                }
            }
            return U;
        }

        CriterionResult algorithm_invariants()
        {
            CriterionResult r{4, "Greedy selection invariants on 1000 random U", true, ""};
            Rng rng(4242);
            std::uniform_int_distribution<unsigned> Kd(2, 40), Md(4, 64);
            std::uniform_real_distribution<double> uni(0.0, 1.0);

            int first_fail = 0, pair_fail = 0, mono_fail = 0;
            for (int t = 0; t < 1000; ++t)
            {
                const unsigned K = Kd(rng), M = Md(rng);
                std::uniform_int_distribution<unsigned> Ksd(1, std::min(K, M));
                const unsigned K_s = Ksd(rng);
                const SpectrumMatrix U = random_U(rng, K, M);
                const double eps = uni(rng);

                const auto res = cusbf_schedule(U, K_s, eps);
                arma::vec norms(K);
                for (unsigned k = 0; k < K; ++k)
                    norms(k) = f1(U.row(k));
                if (res.selected.front() != norms.index_max())
                    ++first_fail;
                bool pairs_ok = true;
                for (std::size_t i = 0; i < res.selected.size(); ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        if (!(f2(U.row(res.selected[i]), U.row(res.selected[j])) < eps))
                            pairs_ok = false;
                if (!pairs_ok)
                    ++pair_fail;

                std::size_t prev = 0;
                bool mono = true;
                for (int e = 0; e <= 20; ++e)
                {
                    const std::size_t n = cusbf_schedule(U, K_s, e / 20.0).selected.size();
                    if (n < prev)
                        mono = false;
                    prev = n;
                }
                if (!mono)
                    ++mono_fail;
            }
            r.pass = first_fail == 0 && pair_fail == 0 && mono_fail == 0;
            r.detail = "first-pick violations=" + std::to_string(first_fail) + " pairwise violations=" +
                       std::to_string(pair_fail) + " epsilon-monotonicity violations=" + std::to_string(mono_fail) +
                       " (of 1000)";
            return r;
        }

        CriterionResult epsilon_sweep_shape()
        {
            CriterionResult r{5, "Epsilon sweep has an interior optimum beating both endpoints by > 2 SE", true, ""};
            const ScenarioConfig cfg = desk_config(64, 30, 8, 100);
            std::vector<MonteCarloReport> reps;
            for (double e : epsilon_grid)
            {
                ScenarioConfig c = cfg;
                c.epsilon = e;
                reps.push_back(monte_carlo(c, Scheme::CUSBF));
            }
            std::size_t best = 1;
            for (std::size_t i = 1; i + 1 < reps.size(); ++i)
                if (reps[i].sum_rate_mean > reps[best].sum_rate_mean)
                    best = i;
            const auto &lo = reps.front(), &hi = reps.back(), &in = reps[best];
            const bool beats_lo = in.sum_rate_mean - lo.sum_rate_mean > 2.0 * std::max(in.sum_rate_stderr, lo.sum_rate_stderr);
            const bool beats_hi = in.sum_rate_mean - hi.sum_rate_mean > 2.0 * std::max(in.sum_rate_stderr, hi.sum_rate_stderr);
            r.pass = beats_lo && beats_hi;

            std::ostringstream d;
            d << "curve:";
            for (std::size_t i = 0; i < reps.size(); ++i)
                d << ' ' << fmt("%g", epsilon_grid[i]) << '=' << fmt("%.2f", reps[i].sum_rate_mean) << "+-"
                  << fmt("%.2f", reps[i].sum_rate_stderr);
            d << "; best interior eps=" << fmt("%g", epsilon_grid[best]);
            r.detail = d.str();
            return r;
        }

        CriterionResult multiuser_diversity()
        {
            CriterionResult r{6, "CUSBF sum rate at K=40 exceeds K=10 by >= 2 SE", true, ""};
            ScenarioConfig c10 = desk_config(64, 10, 8, 100);
            ScenarioConfig c40 = desk_config(64, 40, 8, 100);
            c10.epsilon = select_epsilon(c10, epsilon_grid);
            c40.epsilon = select_epsilon(c40, epsilon_grid);
            const auto r10 = monte_carlo(c10, Scheme::CUSBF);
            const auto r40 = monte_carlo(c40, Scheme::CUSBF);
            const double gap = r40.sum_rate_mean - r10.sum_rate_mean;
            const double se = std::max(r10.sum_rate_stderr, r40.sum_rate_stderr);
            r.pass = gap >= 2.0 * se;
            r.detail = "K=10: " + fmt("%.2f", r10.sum_rate_mean) + "+-" + fmt("%.2f", r10.sum_rate_stderr) + " (eps " +
                       fmt("%g", c10.epsilon) + "), K=40: " + fmt("%.2f", r40.sum_rate_mean) + "+-" +
                       fmt("%.2f", r40.sum_rate_stderr) + " (eps " + fmt("%g", c40.epsilon) + ")";
            return r;
        }

        CriterionResult scheme_ordering()
        {
            CriterionResult r{7, "GWC >= CUSBF >= JSDM by >= 1 SE at 10 dBm; relative GWC-CUSBF gap shrinks 0 -> 30 dBm", true, ""};
            ScenarioConfig cfg = desk_config(64, 20, 5, 200);
            cfg.p_dBm = 10.0;
            cfg.epsilon = select_epsilon(cfg, epsilon_grid);

            const auto gwc = monte_carlo(cfg, Scheme::GWC);
            const auto cus = monte_carlo(cfg, Scheme::CUSBF);
            const auto jsdm = monte_carlo(cfg, Scheme::JSDM);
            const bool g_ge_c = gwc.sum_rate_mean - cus.sum_rate_mean >= std::max(gwc.sum_rate_stderr, cus.sum_rate_stderr);
            const bool c_ge_j = cus.sum_rate_mean - jsdm.sum_rate_mean >= std::max(cus.sum_rate_stderr, jsdm.sum_rate_stderr);

            auto relative_gap = [&](double p)
            {
                ScenarioConfig c = cfg;
                c.p_dBm = p;
                const double g = monte_carlo(c, Scheme::GWC).sum_rate_mean;
                const double u = monte_carlo(c, Scheme::CUSBF).sum_rate_mean;
                return (g - u) / g;
            };
            const double gap0 = relative_gap(0.0);
            const double gap30 = relative_gap(30.0);
            const bool shrinks = gap30 < gap0;

            r.pass = g_ge_c && c_ge_j && shrinks;
            r.detail = "eps=" + fmt("%g", cfg.epsilon) + " GWC=" + fmt("%.2f", gwc.sum_rate_mean) + "+-" +
                       fmt("%.2f", gwc.sum_rate_stderr) + " CUSBF=" + fmt("%.2f", cus.sum_rate_mean) + "+-" +
                       fmt("%.2f", cus.sum_rate_stderr) + " JSDM=" + fmt("%.2f", jsdm.sum_rate_mean) + "+-" +
                       fmt("%.2f", jsdm.sum_rate_stderr) + "; (GWC-CUSBF)/GWC at 0 dBm=" + fmt("%.3f", gap0) +
                       " at 30 dBm=" + fmt("%.3f", gap30) + " [ordering " + (g_ge_c && c_ge_j ? "ok" : "violated") +
                       ", gap trend " + (shrinks ? "ok" : "violated") + "]";
            return r;
        }

        CriterionResult noise_power_value()
        {
            CriterionResult r{8, "Noise power 6.362e-13 W +- 0.1% (20 MHz, 290 K, 9 dB)", true, ""};
            ScenarioConfig c;
            c.BW = 20e6;
            c.T0 = 290.0;
            c.noise_figure_dB = 9.0;
            const double pn = noise_power(c);
            const double rel = std::abs(pn - 6.362e-13) / 6.362e-13;
            r.pass = rel <= 1e-3;
            r.detail = "P_n=" + fmt("%.6e", pn) + " W, relative error " + fmt("%.2e", rel);
            return r;
        }

        CriterionResult sweep_determinism()
        {
            CriterionResult r{9, "Sweep CSV is byte-identical across runs with the same seed", true, ""};
            SweepSpec spec;
            spec.variable = SweepVariable::Epsilon;
            spec.values = {0.1, 0.5, 0.9};
            spec.schemes = {Scheme::CUSBF, Scheme::GWC, Scheme::JSDM};
            spec.base = desk_config(32, 12, 4, 5);
            const std::string a = run_sweep(spec);
            const std::string b = run_sweep(spec);
            r.pass = a == b;
            r.detail = std::to_string(a.size()) + " bytes, " + (a == b ? "identical" : "different");
            return r;
        }

        CriterionResult complexity_trend()
        {
            CriterionResult r{10, "CUSBF scheduling time ~ K^[0.8,1.2]; MMSE estimation superlinear in M", true, ""};
            const auto sched = time_cusbf_scheduling({500, 1000, 2000, 4000, 8000}, 64, 8);
            const auto mmse = time_mmse_estimation({16, 32, 64}, 20);
            r.pass = sched.exponent >= 0.8 && sched.exponent <= 1.2 && mmse.exponent > 1.0;
            r.detail = "scheduling exponent in K=" + fmt("%.3f", sched.exponent) + ", MMSE exponent in M=" +
                       fmt("%.3f", mmse.exponent);
            return r;
        }
    }

    const std::vector<Criterion> &acceptance_criteria()
    {
        static const std::vector<Criterion> all = {
            {1, "szego", szego_convergence},
            {2, "zf-nulling", zf_nulling},
            {3, "covariance-oracle", covariance_oracle},
            {4, "greedy-invariants", algorithm_invariants},
            {5, "epsilon-sweep", epsilon_sweep_shape},
            {6, "multiuser-diversity", multiuser_diversity},
            {7, "scheme-ordering", scheme_ordering},
            {8, "noise-power", noise_power_value},
            {9, "determinism", sweep_determinism},
            {10, "complexity", complexity_trend},
        };
        return all;
    }

    std::string format_result(const CriterionResult &r)
    {
        return std::string(r.pass ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + " -- " + r.detail;
    }

    std::vector<CriterionResult> run_acceptance(const std::vector<int> &ids,
                                                const std::function<void(const CriterionResult &)> &log)
    {
        std::vector<CriterionResult> out;
        for (const auto &c : acceptance_criteria())
        {
            if (!ids.empty() && std::find(ids.begin(), ids.end(), c.id) == ids.end())
                continue;
            CriterionResult res;
            try
            {
                res = c.run();
            }
            catch (const std::exception &e)
            {
                res = {c.id, c.name, false, std::string("exception: ") + e.what()};
            }
            if (log)
                log(res);
            out.push_back(std::move(res));
        }
        return out;
    }
}
