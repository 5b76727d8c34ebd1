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

#include "mimosched/metrics.hpp"

#include "mimosched/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mimosched
{
    std::vector<double> sinr(const arma::cx_mat &H_selected, const Precoder &precoder, double noise_power)
    {
        const arma::uword Ks = H_selected.n_rows;
        if (precoder.W.n_cols != Ks || precoder.W.n_rows != H_selected.n_cols || precoder.power.n_elem != Ks)
            throw std::invalid_argument("sinr: channel and precoder dimensions disagree");

        const arma::mat gain = arma::square(arma::abs(H_selected * precoder.W)); // |h_k w_j|^2
        std::vector<double> out(Ks);
        for (arma::uword k = 0; k < Ks; ++k)
        {
            double interference = 0.0;
            for (arma::uword j = 0; j < Ks; ++j)
                if (j != k)
                    interference += precoder.power(j) * gain(k, j);
            const double denom = interference + noise_power;
            const double signal = precoder.power(k) * gain(k, k);
            out[k] = denom > 0.0 ? signal / denom : (signal > 0.0 ? INFINITY : 0.0);
        }
        return out;
    }

    double sum_rate(const std::vector<double> &sinrs)
    {
        double r = 0.0;
        for (double s : sinrs)
            r += std::log2(1.0 + s);
        return r;
    }

    namespace
    {
        // ZF on the rows of A that belong to `schedule.selected`, dropping users until the problem is well posed.
        Plan zf_with_retry(ScheduleResult schedule, const arma::cx_mat &A_all, double power)
        {
            Plan plan;
            while (!schedule.selected.empty())
            {
                arma::cx_mat A(schedule.selected.size(), A_all.n_cols);
                for (arma::uword i = 0; i < schedule.selected.size(); ++i)
                    A.row(i) = A_all.row(schedule.selected[i]);
                try
                {
                    plan.precoder = zf_precoder(A, power);
                    plan.schedule = std::move(schedule);
                    return plan;
                }
                catch (const RankDeficientError &e)
                {
                    // Rows are positions in the selection order; drop the one selected last.
                    const std::size_t victim = e.rows().empty() ? schedule.selected.size() - 1 : e.rows().back();
                    schedule.selected.erase(schedule.selected.begin() + static_cast<std::ptrdiff_t>(victim));
                    ++plan.zf_retries;
                }
            }
            throw std::runtime_error("zf_precoder: no user left after dropping rank-deficient rows");
        }
    }

    Plan plan_cusbf(const SpectrumMatrix &U, const ScenarioConfig &cfg)
    {
        const ScheduleResult schedule = cusbf_schedule(U, cfg.K_s, cfg.epsilon, cfg.prune_mode);

        // G only for the selected users; zf_with_retry indexes rows by user, so build it for all.
        arma::cx_mat G(U.n_rows, U.n_cols, arma::fill::zeros);
        for (std::size_t k : schedule.selected)
            G.row(k) = approximate_eigenchannel(SpectrumRow(U.row(k)));
        return zf_with_retry(schedule, G, cfg.p_watt());
    }

    Plan plan_jsdm(const SpectrumMatrix &U, const std::vector<CovarianceMatrix> &R_all, const ScenarioConfig &cfg)
    {
        Plan plan;
        plan.schedule = jsdm_schedule(U, cfg.K_s, cfg.epsilon, cfg.prune_mode);
        std::vector<CovarianceMatrix> R_sel;
        for (std::size_t k : plan.schedule.selected)
            R_sel.push_back(R_all.at(k));
        plan.precoder = eigen_beamformer(R_sel, cfg.p_watt());
        return plan;
    }

    Plan plan_gwc(const ChannelMatrix &H_est, const ScenarioConfig &cfg)
    {
        return zf_with_retry(gwc_schedule(H_est, cfg.K_s, cfg.gamma), H_est, cfg.p_watt());
    }

    RateReport run_drop(const ScenarioConfig &cfg, Scheme scheme, std::uint64_t seed)
    {
        cfg.validate();

        Rng geo_rng = make_rng(seed, Stream::Geometry);
        Drop drop = generate_drop(cfg, geo_rng);

        // Second-order statistics only depend on geometry (a_ga, phi).
        std::vector<CovarianceMatrix> R_all;
        R_all.reserve(drop.links.size());
        for (const auto &link : drop.links)
            R_all.push_back(covariance(link, cfg));

        Plan plan;
        if (scheme == Scheme::CUSBF)
            plan = plan_cusbf(build_U(drop.links, cfg), cfg);
        else if (scheme == Scheme::JSDM)
            plan = plan_jsdm(build_U(drop.links, cfg), R_all, cfg);

        // The fading realization is drawn only after the statistics-based plans exist.
        Rng fading_rng = make_rng(seed, Stream::Fading);
        for (auto &link : drop.links)
            draw_small_scale(link, fading_rng);
        const ChannelMatrix H = assemble_channel(drop.links, cfg);
        const double P_n = noise_power(cfg);

        if (scheme == Scheme::GWC)
        {
            Rng pilot_rng = make_rng(seed, Stream::Pilot);
            const ChannelMatrix H_est = mmse_estimate(H, R_all, P_n, cfg.p_watt(), pilot_rng);
            plan = plan_gwc(H_est, cfg);
        }

        arma::cx_mat H_sel(plan.schedule.selected.size(), cfg.M);
        for (arma::uword i = 0; i < plan.schedule.selected.size(); ++i)
            H_sel.row(i) = H.row(plan.schedule.selected[i]);

        RateReport rep;
        rep.scheme = scheme;
        rep.selected = plan.schedule.selected;
        rep.per_user_sinr = sinr(H_sel, plan.precoder, P_n);
        for (double s : rep.per_user_sinr)
            rep.per_user_rate.push_back(std::log2(1.0 + s));
        rep.sum_rate = std::accumulate(rep.per_user_rate.begin(), rep.per_user_rate.end(), 0.0);
        rep.M = cfg.M;
        rep.K = cfg.K;
        rep.K_s = cfg.K_s;
        rep.epsilon = cfg.epsilon;
        rep.p_dBm = cfg.p_dBm;
        return rep;
    }

    std::uint64_t drop_seed(std::uint64_t master_seed, unsigned drop)
    {
        return derive_seed(master_seed, drop);
    }

    std::pair<double, double> mean_stderr(const std::vector<double> &x)
    {
        if (x.empty())
            return {0.0, 0.0};
        const double n = static_cast<double>(x.size());
        const double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
        if (x.size() < 2)
            return {mean, 0.0};
        double ss = 0.0;
        for (double v : x)
            ss += (v - mean) * (v - mean);
        return {mean, std::sqrt(ss / (n - 1.0) / n)};
    }

    MonteCarloReport monte_carlo(const ScenarioConfig &cfg, Scheme scheme)
    {
        cfg.validate();

        MonteCarloReport mc;
        mc.scheme = scheme;
        mc.drops = cfg.drops;
        mc.seed = cfg.seed;
        mc.per_drop.reserve(cfg.drops);

        std::vector<double> rates, per_user, n_sel;
        for (unsigned d = 0; d < cfg.drops; ++d)
        {
            mc.per_drop.push_back(run_drop(cfg, scheme, drop_seed(cfg.seed, d)));
            const auto &r = mc.per_drop.back();
            rates.push_back(r.sum_rate);
            n_sel.push_back(static_cast<double>(r.selected.size()));
            per_user.push_back(r.selected.empty() ? 0.0 : r.sum_rate / static_cast<double>(r.selected.size()));
        }
        std::tie(mc.sum_rate_mean, mc.sum_rate_stderr) = mean_stderr(rates);
        mc.per_user_rate_mean = mean_stderr(per_user).first;
        mc.n_selected_mean = mean_stderr(n_sel).first;
        return mc;
    }
}
