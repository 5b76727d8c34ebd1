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

// mimosched command line: run, sweep, complexity, check.

#include "mimosched/acceptance.hpp"
#include "mimosched/config.hpp"
#include "mimosched/experiment.hpp"
#include "mimosched/metrics.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace mimosched;

namespace
{
    std::vector<std::string> split(const std::string &s, char sep)
    {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string item;
        while (std::getline(ss, item, sep))
            if (!item.empty())
                out.push_back(item);
        return out;
    }

    double to_double(const std::string &field, const std::string &s)
    {
        try
        {
            std::size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos == s.size())
                return v;
        }
        catch (const std::exception &)
        {
        }
        throw ConfigError(field, "'" + s + "' is not a number");
    }

    // "a,b,c" or "start:step:stop"
    std::vector<double> parse_values(const std::string &text)
    {
        const auto range = split(text, ':');
        if (range.size() == 3)
        {
            const double start = to_double("values", range[0]);
            const double step = to_double("values", range[1]);
            const double stop = to_double("values", range[2]);
            if (!(step > 0.0) || stop < start)
                throw ConfigError("values", "range must be start:step:stop with step > 0 and stop >= start");
            std::vector<double> v;
            for (int i = 0; start + i * step <= stop + 1e-9 * step; ++i)
                v.push_back(start + i * step);
            return v;
        }
        std::vector<double> v;
        for (const auto &item : split(text, ','))
            v.push_back(to_double("values", item));
        return v;
    }

    // Defaults < config file (--config, else $MIMOSCHED_CONFIG) < --set key=value.
    ScenarioConfig load_config(const std::string &config_path, const std::vector<std::string> &overrides)
    {
        ScenarioConfig cfg;
        std::string path = config_path;
        if (path.empty())
            if (const char *env = std::getenv(config_env_var))
                path = env;
        if (!path.empty())
            apply_config_file(cfg, path);
        for (const auto &kv : overrides)
        {
            const auto eq = kv.find('=');
            if (eq == std::string::npos)
                throw ConfigError(kv, "--set expects key=value");
            cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        return cfg;
    }

    void print_report(const MonteCarloReport &r, const ScenarioConfig &cfg)
    {
        std::printf("scheme            %s\n", std::string(to_string(r.scheme)).c_str());
        std::printf("M, K, K_s         %u, %u, %u\n", cfg.M, cfg.K, cfg.K_s);
        std::printf("epsilon           %g\n", cfg.epsilon);
        std::printf("p_dBm             %g\n", cfg.p_dBm);
        std::printf("drops, seed       %u, %llu\n", r.drops, static_cast<unsigned long long>(r.seed));
        std::printf("sum rate          %.4f +- %.4f bits/s/Hz\n", r.sum_rate_mean, r.sum_rate_stderr);
        std::printf("per-user rate     %.4f bits/s/Hz\n", r.per_user_rate_mean);
        std::printf("selected users    %.3f\n", r.n_selected_mean);
        if (r.per_drop.size() == 1)
        {
            const auto &d = r.per_drop.front();
            for (std::size_t i = 0; i < d.selected.size(); ++i)
                std::printf("  user %3zu  SINR %.4e  rate %.4f\n", d.selected[i], d.per_user_sinr[i], d.per_user_rate[i]);
        }
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"Correlation-based user scheduling and beamforming for massive MIMO"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::vector<std::string> overrides;
    app.add_option("-c,--config", config_path,
                   std::string("Flat key = value config file (default: $") + config_env_var + ")");
    app.add_option("-s,--set", overrides, "Override a config field, key=value (repeatable)")->allow_extra_args(false);

    auto *run = app.add_subcommand("run", "Monte Carlo evaluation of one scheme for one configuration");
    std::string scheme_name = "CUSBF";
    run->add_option("--scheme", scheme_name, "CUSBF, GWC or JSDM");

    auto *sweep = app.add_subcommand("sweep", "Sweep one variable and write a CSV table");
    std::string variable = "epsilon", values_text, schemes_text = "CUSBF", out_path;
    sweep->add_option("--variable", variable, "epsilon, K, K_s, power_dBm or M");
    sweep->add_option("--values", values_text, "Comma list or start:step:stop")->required();
    sweep->add_option("--schemes", schemes_text, "Comma list of schemes");
    sweep->add_option("-o,--out", out_path, "Output file (default: stdout)");

    auto *complexity = app.add_subcommand("complexity", "Complexity table with measured timings");
    bool with_fits = false;
    complexity->add_flag("--fits", with_fits, "Also fit timing exponents (scheduling in K, MMSE in M)");

    auto *check = app.add_subcommand("check", "Run the acceptance suite");
    std::vector<int> criteria;
    check->add_option("--criteria", criteria, "Subset of criterion numbers (default: all)")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*check)
        {
            const auto results = run_acceptance(criteria, [](const CriterionResult &r)
                                                { std::printf("%s\n", format_result(r).c_str()); std::fflush(stdout); });
            int failed = 0;
            for (const auto &r : results)
                failed += r.pass ? 0 : 1;
            std::printf("%zu criteria, %d failed\n", results.size(), failed);
            return failed == 0 ? 0 : 1;
        }

        const ScenarioConfig cfg = load_config(config_path, overrides);

        if (*run)
        {
            cfg.validate();
            const Scheme scheme = scheme_from_string(scheme_name);
            print_report(monte_carlo(cfg, scheme), cfg);
        }
        else if (*sweep)
        {
            SweepSpec spec;
            spec.variable = sweep_variable_from_string(variable);
            spec.values = parse_values(values_text);
            for (const auto &s : split(schemes_text, ','))
                spec.schemes.push_back(scheme_from_string(s));
            spec.base = cfg;
            const std::string csv = run_sweep(spec);
            if (out_path.empty())
                std::cout << csv;
            else
            {
                std::ofstream out(out_path, std::ios::binary);
                if (!out)
                    throw ConfigError("out", "cannot write '" + out_path + "'");
                out << csv;
            }
        }
        else if (*complexity)
        {
            std::cout << complexity_report(cfg);
            if (with_fits)
            {
                const auto s = time_cusbf_scheduling({500, 1000, 2000, 4000, 8000}, cfg.M, cfg.K_s);
                const auto m = time_mmse_estimation({16, 32, 64}, cfg.K);
                std::printf("\nCUSBF scheduling time vs K: exponent %.3f\n", s.exponent);
                std::printf("MMSE estimation time vs M:  exponent %.3f\n", m.exponent);
            }
        }
    }
    catch (const ConfigError &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    catch (const std::exception &e)
    {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
