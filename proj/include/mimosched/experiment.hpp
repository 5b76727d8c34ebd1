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

#ifndef mimosched_experiment_H
#define mimosched_experiment_H

#include "mimosched/config.hpp"
#include "mimosched/metrics.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace mimosched
{
    enum class SweepVariable
    {
        Epsilon,
        K,
        K_s,
        PowerDBm,
        M
    };

    std::string_view to_string(SweepVariable v);
    SweepVariable sweep_variable_from_string(std::string_view name);

    struct SweepSpec
    {
        SweepVariable variable = SweepVariable::Epsilon;
        std::vector<double> values;  // nonempty, sorted ascending
        std::vector<Scheme> schemes; // nonempty
        ScenarioConfig base;
    };

    // `base` with the swept variable overridden.
    ScenarioConfig apply_sweep_value(const ScenarioConfig &base, SweepVariable v, double value);

    struct SweepPoint
    {
        Scheme scheme;
        double value;
        ScenarioConfig config;
        MonteCarloReport report;
    };

    // Validates every point first (ConfigError names the field), then runs them in (scheme, value) order.
    std::vector<SweepPoint> run_sweep_points(const SweepSpec &spec);

    inline constexpr std::string_view csv_header =
        "scheme,variable,value,sum_rate_mean,sum_rate_stderr,per_user_rate_mean,n_selected_mean,drops,seed,"
        "M,K,K_s,epsilon,p_dBm";

    std::string to_csv(const SweepSpec &spec, const std::vector<SweepPoint> &points);
    std::string run_sweep(const SweepSpec &spec);

    // CUSBF epsilon that maximizes the mean sum rate of `cfg` over `grid` (first maximum wins).
    double select_epsilon(const ScenarioConfig &cfg, const std::vector<double> &grid);

    // Least-squares slope of log(y) over log(x).
    double loglog_slope(const std::vector<double> &x, const std::vector<double> &y);

    struct TimingFit
    {
        std::vector<double> sizes;
        std::vector<double> seconds; // best of several repetitions
        double exponent = 0.0;
    };

    // CUSBF scheduling on synthetic spectrum matrices of K users each (no pruning, so every step scans all candidates).
    TimingFit time_cusbf_scheduling(const std::vector<unsigned> &K_list, unsigned M, unsigned K_s, unsigned reps = 15);

    // MMSE estimation of K users for each array size in M_list.
    TimingFit time_mmse_estimation(const std::vector<unsigned> &M_list, unsigned K, unsigned reps = 15);

    // Asymptotic table rows next to measured stage timings and factorization sizes of one drop per scheme.
    std::string complexity_report(const ScenarioConfig &cfg);
}

#endif
