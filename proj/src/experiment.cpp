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

#include "mimosched/experiment.hpp"

#include "mimosched/geometry.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mimosched
{
    namespace
    {
        std::string fmt(const char *format, double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof(buf), format, v);
            return buf;
        }

        unsigned as_count(SweepVariable v, double value)
        {
            if (!(value >= 0.0) || value != std::floor(value) || value > 1e9)
                throw ConfigError(std::string(to_string(v)), "sweep value " + fmt("%g", value) + " is not a count");
            return static_cast<unsigned>(value);
        }

        template <typename F>
        double best_time(unsigned reps, F &&f)
        {
            double best = std::numeric_limits<double>::infinity();
            for (unsigned r = 0; r < reps; ++r)
            {
                const auto t0 = std::chrono::steady_clock::now();
                f();
                const auto t1 = std::chrono::steady_clock::now();
                best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
            }
            return best;
        }
    }

    std::string_view to_string(SweepVariable v)
    {
        switch (v)
        {
        case SweepVariable::Epsilon:
            return "epsilon";
        case SweepVariable::K:
            return "K";
        case SweepVariable::K_s:
            return "K_s";
        case SweepVariable::PowerDBm:
            return "power_dBm";
        case SweepVariable::M:
            return "M";
        }
        return "?";
    }

    SweepVariable sweep_variable_from_string(std::string_view name)
    {
        for (auto v : {SweepVariable::Epsilon, SweepVariable::K, SweepVariable::K_s, SweepVariable::PowerDBm, SweepVariable::M})
            if (to_string(v) == name)
                return v;
        throw ConfigError("variable", "unknown sweep variable '" + std::string(name) +
                                          "' (expected epsilon, K, K_s, power_dBm or M)");
    }

    ScenarioConfig apply_sweep_value(const ScenarioConfig &base, SweepVariable v, double value)
    {
        ScenarioConfig c = base;
        switch (v)
        {
        case SweepVariable::Epsilon:
            c.epsilon = value;
            break;
        case SweepVariable::K:
            c.K = as_count(v, value);
            break;
        case SweepVariable::K_s:
            c.K_s = as_count(v, value);
            break;
        case SweepVariable::PowerDBm:
            c.p_dBm = value;
            break;
        case SweepVariable::M:
            c.M = as_count(v, value);
            break;
        }
        return c;
    }

    std::vector<SweepPoint> run_sweep_points(const SweepSpec &spec)
    {
        if (spec.values.empty())
            throw ConfigError("values", "sweep needs at least one value");
        if (!std::is_sorted(spec.values.begin(), spec.values.end()))
            throw ConfigError("values", "sweep values must be sorted ascending");
        if (spec.schemes.empty())
            throw ConfigError("schemes", "sweep needs at least one scheme");

        std::vector<SweepPoint> points;
        for (Scheme s : spec.schemes)
            for (double v : spec.values)
            {
                ScenarioConfig c = apply_sweep_value(spec.base, spec.variable, v);
                c.validate();
                points.push_back({s, v, c, {}});
            }

        for (auto &p : points)
            p.report = monte_carlo(p.config, p.scheme);
        return points;
    }

    std::string to_csv(const SweepSpec &spec, const std::vector<SweepPoint> &points)
    {
        std::ostringstream out;
        out << csv_header << '\n';
        for (const auto &p : points)
        {
            const auto &r = p.report;
            out << to_string(p.scheme) << ',' << to_string(spec.variable) << ',' << fmt("%.10g", p.value) << ','
                << fmt("%.6f", r.sum_rate_mean) << ',' << fmt("%.6f", r.sum_rate_stderr) << ','
                << fmt("%.6f", r.per_user_rate_mean) << ',' << fmt("%.4f", r.n_selected_mean) << ',' << r.drops << ','
                << r.seed << ',' << p.config.M << ',' << p.config.K << ',' << p.config.K_s << ','
                << fmt("%.10g", p.config.epsilon) << ',' << fmt("%.10g", p.config.p_dBm) << '\n';
        }
        return out.str();
    }

    std::string run_sweep(const SweepSpec &spec)
    {
        return to_csv(spec, run_sweep_points(spec));
    }

    double select_epsilon(const ScenarioConfig &cfg, const std::vector<double> &grid)
    {
        if (grid.empty())
            throw ConfigError("epsilon", "empty epsilon grid");
        double best_eps = grid.front();
        double best_rate = -1.0;
        for (double e : grid)
        {
            ScenarioConfig c = cfg;
            c.epsilon = e;
            const double rate = monte_carlo(c, Scheme::CUSBF).sum_rate_mean;
            if (rate > best_rate)
            {
                best_rate = rate;
                best_eps = e;
            }
        }
        return best_eps;
    }

    double loglog_slope(const std::vector<double> &x, const std::vector<double> &y)
    {
        if (x.size() != y.size() || x.size() < 2)
            throw std::invalid_argument("loglog_slope: need at least two (x, y) pairs");
        const double n = static_cast<double>(x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            const double lx = std::log(x[i]), ly = std::log(y[i]);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }

    TimingFit time_cusbf_scheduling(const std::vector<unsigned> &K_list, unsigned M, unsigned K_s, unsigned reps)
    {
        TimingFit fit;
        Rng rng(20260101);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (unsigned K : K_list)
        {
            // Sparse nonnegative rows: a quarter of the bins carry power.
            SpectrumMatrix U(K, M, arma::fill::zeros);
            for (unsigned k = 0; k < K; ++k)
                for (unsigned b = 0; b < M; ++b)
                    if (uni(rng) < 0.25)
                        U(k, b) = uni(rng);
            U.col(0).fill(1e-3); // no empty rows

            std::size_t sink = 0;
            const double t = best_time(reps, [&] { sink += cusbf_schedule(U, K_s, 1.0).selected.size(); });
            fit.sizes.push_back(K);
            fit.seconds.push_back(t);
            if (sink == 0)
                throw std::logic_error("time_cusbf_scheduling: empty schedule");
        }
        fit.exponent = loglog_slope(fit.sizes, fit.seconds);
        return fit;
    }

    TimingFit time_mmse_estimation(const std::vector<unsigned> &M_list, unsigned K, unsigned reps)
    {
        TimingFit fit;
        for (unsigned M : M_list)
        {
            ScenarioConfig cfg;
            cfg.M = M;
            cfg.K = K;
            cfg.K_s = std::min(K, M);
            Rng geo(7);
            Drop drop = generate_drop(cfg, geo);
            Rng fading(8);
            std::vector<CovarianceMatrix> R;
            for (auto &link : drop.links)
            {
                draw_small_scale(link, fading);
                R.push_back(covariance(link, cfg));
            }
            const ChannelMatrix H = assemble_channel(drop.links, cfg);
            const double P_n = noise_power(cfg);

            double sink = 0.0;
            const double t = best_time(reps,
                                       [&]
                                       {
                                           Rng pilot(9);
                                           sink += arma::norm(mmse_estimate(H, R, P_n, cfg.p_watt(), pilot), "fro");
                                       });
            fit.sizes.push_back(M);
            fit.seconds.push_back(t);
            if (!std::isfinite(sink))
                throw std::logic_error("time_mmse_estimation: non-finite estimate");
        }
        fit.exponent = loglog_slope(fit.sizes, fit.seconds);
        return fit;
    }

    std::string complexity_report(const ScenarioConfig &cfg)
    {
        cfg.validate();
        using clock = std::chrono::steady_clock;
        auto seconds = [](clock::time_point a, clock::time_point b) { return std::chrono::duration<double>(b - a).count(); };

        Rng geo = make_rng(drop_seed(cfg.seed, 0), Stream::Geometry);
        Drop drop = generate_drop(cfg, geo);
        std::vector<CovarianceMatrix> R_all;
        for (const auto &link : drop.links)
            R_all.push_back(covariance(link, cfg));
        Rng fading = make_rng(drop_seed(cfg.seed, 0), Stream::Fading);
        for (auto &link : drop.links)
            draw_small_scale(link, fading);
        const ChannelMatrix H = assemble_channel(drop.links, cfg);
        const double P_n = noise_power(cfg);

        // GWC
        Rng pilot = make_rng(drop_seed(cfg.seed, 0), Stream::Pilot);
        auto t0 = clock::now();
        const ChannelMatrix H_est = mmse_estimate(H, R_all, P_n, cfg.p_watt(), pilot);
        auto t1 = clock::now();
        const ScheduleResult gwc = gwc_schedule(H_est, cfg.K_s, cfg.gamma);
        auto t2 = clock::now();
        arma::cx_mat A(gwc.selected.size(), cfg.M);
        for (arma::uword i = 0; i < gwc.selected.size(); ++i)
            A.row(i) = H_est.row(gwc.selected[i]);
        (void)zf_precoder(A);
        auto t3 = clock::now();
        const double gwc_est = seconds(t0, t1), gwc_sched = seconds(t1, t2), gwc_bf = seconds(t2, t3);

        // CUSBF
        t0 = clock::now();
        const SpectrumMatrix U = build_U(drop.links, cfg);
        const ScheduleResult cus = cusbf_schedule(U, cfg.K_s, cfg.epsilon, cfg.prune_mode);
        t1 = clock::now();
        std::vector<SpectrumRow> rows;
        for (auto k : cus.selected)
            rows.push_back(U.row(k));
        (void)zf_precoder(approximate_eigenchannel(rows, cfg.M));
        t2 = clock::now();
        const double cus_sched = seconds(t0, t1), cus_bf = seconds(t1, t2);

        // JSDM
        t0 = clock::now();
        const ScheduleResult jsdm = jsdm_schedule(U, cfg.K_s, cfg.epsilon, cfg.prune_mode);
        t1 = clock::now();
        std::vector<CovarianceMatrix> R_sel;
        for (auto k : jsdm.selected)
            R_sel.push_back(R_all[k]);
        (void)eigen_beamformer(R_sel);
        t2 = clock::now();
        const double jsdm_sched = seconds(t0, t1), jsdm_bf = seconds(t1, t2);

        const unsigned K = cfg.K, M = cfg.M;
        std::ostringstream out;
        out << "Computational complexity (K = " << K << ", M = " << M << ", K_s = " << cfg.K_s << ")\n\n";
        out << "Asymptotic cost\n";
        out << "  scheme       channel estimation   user scheduling   beamforming\n";
        out << "  GWC          O(K^3 M^3)           O(K)              O(M^3)\n";
        out << "  JSDM         O(K_s^3 M^3)         O(K)              K_s O(M^3 + M log^2 M log b)\n";
        out << "  CUSBF        -                    O(K)              O(M^3)\n\n";

        out << "Measured on one drop (seconds) and factorization sizes\n";
        out << "  GWC          estimation " << fmt("%.3e", gwc_est) << "  [" << K * M << "x" << K * M
            << " system, solved as " << K << " blocks of " << M << "x" << M << "]\n";
        out << "               scheduling " << fmt("%.3e", gwc_sched) << "  [" << gwc.selected.size() << " users selected]\n";
        out << "               beamforming " << fmt("%.3e", gwc_bf) << " [SVD of " << gwc.selected.size() << "x" << M << "]\n";
        out << "  JSDM         estimation -\n";
        out << "               scheduling " << fmt("%.3e", jsdm_sched) << "  [" << jsdm.selected.size() << " users selected]\n";
        out << "               beamforming " << fmt("%.3e", jsdm_bf) << " [" << jsdm.selected.size()
            << " Hermitian eigendecompositions of " << M << "x" << M << "]\n";
        out << "  CUSBF        estimation -\n";
        out << "               scheduling " << fmt("%.3e", cus_sched) << "  [" << cus.selected.size()
            << " users selected, U is " << K << "x" << M << "]\n";
        out << "               beamforming " << fmt("%.3e", cus_bf) << " [SVD of " << cus.selected.size() << "x" << M << "]\n";
        return out.str();
    }
}
