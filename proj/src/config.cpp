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

#include "mimosched/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace mimosched
{
    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r\n");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r\n");
            return s.substr(first, last - first + 1);
        }

        double parse_double(std::string_view key, std::string_view text)
        {
            text = trim(text);
            double v = 0.0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw ConfigError(std::string(key), "expected a number, got '" + std::string(text) + "'");
            return v;
        }

        std::uint64_t parse_uint(std::string_view key, std::string_view text)
        {
            text = trim(text);
            std::uint64_t v = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
            if (ec != std::errc() || ptr != text.data() + text.size())
                throw ConfigError(std::string(key), "expected a non-negative integer, got '" + std::string(text) + "'");
            return v;
        }

        unsigned parse_unsigned(std::string_view key, std::string_view text)
        {
            const auto v = parse_uint(key, text);
            if (v > 0xFFFFFFFFull)
                throw ConfigError(std::string(key), "value out of range");
            return static_cast<unsigned>(v);
        }

        std::string format_double(double v)
        {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%.17g", v);
            return buf;
        }

        struct Field
        {
            std::string key;
            std::function<void(ScenarioConfig &, std::string_view)> set;
            std::function<std::string(const ScenarioConfig &)> get;
        };

#define MIMOSCHED_DOUBLE_FIELD(name)                                                                   \
    Field { #name, [](ScenarioConfig &c, std::string_view v) { c.name = parse_double(#name, v); },    \
            [](const ScenarioConfig &c) { return format_double(c.name); } }
#define MIMOSCHED_UNSIGNED_FIELD(name)                                                                 \
    Field { #name, [](ScenarioConfig &c, std::string_view v) { c.name = parse_unsigned(#name, v); },  \
            [](const ScenarioConfig &c) { return std::to_string(c.name); } }

        const std::vector<Field> &fields()
        {
            static const std::vector<Field> table = {
                MIMOSCHED_UNSIGNED_FIELD(M),
                MIMOSCHED_UNSIGNED_FIELD(K),
                MIMOSCHED_UNSIGNED_FIELD(K_s),
                MIMOSCHED_DOUBLE_FIELD(R),
                MIMOSCHED_DOUBLE_FIELD(R_th_factor),
                MIMOSCHED_DOUBLE_FIELD(f_c),
                MIMOSCHED_DOUBLE_FIELD(d_over_lambda),
                MIMOSCHED_DOUBLE_FIELD(BW),
                MIMOSCHED_DOUBLE_FIELD(noise_figure_dB),
                MIMOSCHED_DOUBLE_FIELD(T0),
                MIMOSCHED_DOUBLE_FIELD(p_dBm),
                MIMOSCHED_DOUBLE_FIELD(epsilon),
                MIMOSCHED_UNSIGNED_FIELD(N_C),
                MIMOSCHED_UNSIGNED_FIELD(N_p),
                MIMOSCHED_DOUBLE_FIELD(vr_radius),
                MIMOSCHED_DOUBLE_FIELD(vr_transition),
                MIMOSCHED_DOUBLE_FIELD(h_BS),
                MIMOSCHED_DOUBLE_FIELD(h_MS),
                MIMOSCHED_UNSIGNED_FIELD(drops),
                Field{"seed", [](ScenarioConfig &c, std::string_view v) { c.seed = parse_uint("seed", v); },
                      [](const ScenarioConfig &c) { return std::to_string(c.seed); }},
                MIMOSCHED_DOUBLE_FIELD(cluster_spread_deg),
                MIMOSCHED_DOUBLE_FIELD(ac_spread_dB),
                MIMOSCHED_DOUBLE_FIELD(gamma),
                Field{"prune_mode", [](ScenarioConfig &c, std::string_view v) { c.prune_mode = prune_mode_from_string(trim(v)); },
                      [](const ScenarioConfig &c) { return std::string(to_string(c.prune_mode)); }},
            };
            return table;
        }

#undef MIMOSCHED_DOUBLE_FIELD
#undef MIMOSCHED_UNSIGNED_FIELD

        const Field &find_field(std::string_view key)
        {
            for (const auto &f : fields())
                if (f.key == key)
                    return f;
            throw ConfigError(std::string(key), "unknown key");
        }

        void require(bool ok, const char *field, const char *what)
        {
            if (!ok)
                throw ConfigError(field, what);
        }
    }

    std::string_view to_string(Scheme s)
    {
        switch (s)
        {
        case Scheme::CUSBF:
            return "CUSBF";
        case Scheme::GWC:
            return "GWC";
        case Scheme::JSDM:
            return "JSDM";
        }
        return "?";
    }

    Scheme scheme_from_string(std::string_view name)
    {
        if (name == "CUSBF")
            return Scheme::CUSBF;
        if (name == "GWC")
            return Scheme::GWC;
        if (name == "JSDM")
            return Scheme::JSDM;
        throw ConfigError("scheme", "unknown scheme '" + std::string(name) + "' (expected CUSBF, GWC or JSDM)");
    }

    std::string_view to_string(PruneMode m)
    {
        return m == PruneMode::AllSelected ? "all" : "latest";
    }

    PruneMode prune_mode_from_string(std::string_view name)
    {
        if (name == "all")
            return PruneMode::AllSelected;
        if (name == "latest")
            return PruneMode::LatestOnly;
        throw ConfigError("prune_mode", "expected 'all' or 'latest', got '" + std::string(name) + "'");
    }

    double dBm_to_watt(double dBm)
    {
        return std::pow(10.0, (dBm - 30.0) / 10.0);
    }

    double ScenarioConfig::wavelength() const
    {
        return 299792458.0 / f_c;
    }

    double ScenarioConfig::p_watt() const
    {
        return dBm_to_watt(p_dBm);
    }

    void ScenarioConfig::validate() const
    {
        require(M >= 1, "M", "must be at least 1");
        require(K_s >= 1, "K_s", "must be at least 1");
        require(M >= K_s, "K_s", "must not exceed M");
        require(K >= K_s, "K", "must be at least K_s");
        require(std::isfinite(R) && R > 0.0, "R", "must be positive");
        require(std::isfinite(R_th_factor) && R_th_factor >= 0.0 && R_th_factor < 1.0, "R_th_factor", "must lie in [0, 1)");
        require(std::isfinite(f_c) && f_c > 0.0, "f_c", "must be positive");
        require(std::isfinite(d_over_lambda) && d_over_lambda > 0.0, "d_over_lambda", "must be positive");
        require(std::isfinite(BW) && BW > 0.0, "BW", "must be positive");
        require(std::isfinite(noise_figure_dB), "noise_figure_dB", "must be finite");
        require(std::isfinite(T0) && T0 > 0.0, "T0", "must be positive");
        require(std::isfinite(p_dBm), "p_dBm", "must be finite");
        require(std::isfinite(epsilon) && epsilon >= 0.0 && epsilon <= 1.0, "epsilon", "must lie in [0, 1]");
        require(N_C >= 1, "N_C", "must be at least 1");
        require(N_p >= 1, "N_p", "must be at least 1");
        require(std::isfinite(vr_radius) && vr_radius > 0.0, "vr_radius", "must be positive");
        require(std::isfinite(vr_transition) && vr_transition >= 0.0 && vr_transition <= vr_radius, "vr_transition",
                "must lie in [0, vr_radius]");
        require(std::isfinite(h_BS) && h_BS > 0.0, "h_BS", "must be positive");
        require(std::isfinite(h_MS) && h_MS > 0.0, "h_MS", "must be positive");
        require(drops >= 1, "drops", "must be at least 1");
        require(std::isfinite(cluster_spread_deg) && cluster_spread_deg >= 0.0, "cluster_spread_deg", "must be non-negative");
        require(std::isfinite(ac_spread_dB) && ac_spread_dB >= 0.0, "ac_spread_dB", "must be non-negative");
        require(std::isfinite(gamma) && gamma > 0.0 && gamma <= 1.0, "gamma", "must lie in (0, 1]");
    }

    void ScenarioConfig::set(std::string_view key, std::string_view value)
    {
        find_field(trim(key)).set(*this, value);
    }

    std::string ScenarioConfig::get(std::string_view key) const
    {
        return find_field(key).get(*this);
    }

    const std::vector<std::string> &config_keys()
    {
        static const std::vector<std::string> keys = []
        {
            std::vector<std::string> k;
            for (const auto &f : fields())
                k.push_back(f.key);
            return k;
        }();
        return keys;
    }

    void apply_config_text(ScenarioConfig &cfg, std::string_view text)
    {
        std::size_t line_no = 0;
        while (!text.empty())
        {
            const auto eol = text.find('\n');
            std::string_view line = text.substr(0, eol);
            text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;

            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(std::string(line), "line " + std::to_string(line_no) + " is not of the form key = value");
            cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
        }
    }

    void apply_config_file(ScenarioConfig &cfg, const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("config", "cannot open file '" + path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        apply_config_text(cfg, ss.str());
    }
}
