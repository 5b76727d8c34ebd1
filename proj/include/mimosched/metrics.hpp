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

#ifndef mimosched_metrics_H
#define mimosched_metrics_H

#include "mimosched/channel.hpp"
#include "mimosched/config.hpp"
#include "mimosched/precoding.hpp"
#include "mimosched/scheduling.hpp"
#include "mimosched/spectrum.hpp"

#include <cstdint>
#include <vector>

namespace mimosched
{
    struct RateReport
    {
        Scheme scheme = Scheme::CUSBF;
        std::vector<std::size_t> selected;
        std::vector<double> per_user_sinr;  // linear
        std::vector<double> per_user_rate;  // bits/s/Hz
        double sum_rate = 0.0;              // bits/s/Hz

        // config echo
        unsigned M = 0, K = 0, K_s = 0;
        double epsilon = 0.0;
        double p_dBm = 0.0;
    };

    // SINR_k = p_k |h_k w_k|^2 / (sum_{j != k} p_j |h_k w_j|^2 + P_n), row k of H belongs to the k-th served user.
    std::vector<double> sinr(const arma::cx_mat &H_selected, const Precoder &precoder, double noise_power);

    // sum_k log2(1 + SINR_k)
    double sum_rate(const std::vector<double> &sinrs);

    // User selection plus beamformer, computed by one scheme.
    struct Plan
    {
        ScheduleResult schedule;
        Precoder precoder;
        unsigned zf_retries = 0;
    };

    // Statistics-only planners: their inputs are the spectrum matrix and covariances, never a channel realization.
    Plan plan_cusbf(const SpectrumMatrix &U, const ScenarioConfig &cfg);
    Plan plan_jsdm(const SpectrumMatrix &U, const std::vector<CovarianceMatrix> &R_all, const ScenarioConfig &cfg);

    // CSI-based planner working on the estimated channel of all K users.
    Plan plan_gwc(const ChannelMatrix &H_est, const ScenarioConfig &cfg);

    // Drop geometry -> statistics -> schedule + precoder -> fresh fading draw -> SINR on the true channel.
    // A rank-deficient ZF problem drops the latest selected user involved and retries.
    RateReport run_drop(const ScenarioConfig &cfg, Scheme scheme, std::uint64_t drop_seed);

    struct MonteCarloReport
    {
        Scheme scheme = Scheme::CUSBF;
        unsigned drops = 0;
        std::uint64_t seed = 0;
        double sum_rate_mean = 0.0;
        double sum_rate_stderr = 0.0;
        double per_user_rate_mean = 0.0;
        double n_selected_mean = 0.0;
        std::vector<RateReport> per_drop;
    };

    // Seed of drop d under master seed s; independent of the total number of drops.
    std::uint64_t drop_seed(std::uint64_t master_seed, unsigned drop);

    MonteCarloReport monte_carlo(const ScenarioConfig &cfg, Scheme scheme);

    // Mean and standard error (sample std / sqrt(n); 0 for n = 1).
    std::pair<double, double> mean_stderr(const std::vector<double> &x);
}

#endif
