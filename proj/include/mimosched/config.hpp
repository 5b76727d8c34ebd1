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

#ifndef mimosched_config_H
#define mimosched_config_H

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mimosched
{
    // Raised for invalid or unknown configuration fields. The message always names the field.
    class ConfigError : public std::invalid_argument
    {
    public:
        ConfigError(const std::string &field, const std::string &what)
            : std::invalid_argument("invalid config field '" + field + "': " + what), field_(field) {}
        const std::string &field() const noexcept { return field_; }

    private:
        std::string field_;
    };

    enum class Scheme
    {
        CUSBF, // correlation-based scheduling, ZF on the approximate eigenchannel
        GWC,   // semi-orthogonal greedy selection, ZF on MMSE channel estimates
        JSDM   // bin-occupancy selection, dominant-eigenvector beamforming
    };

    std::string_view to_string(Scheme s);
    Scheme scheme_from_string(std::string_view name);

    // Which already-selected users a candidate is tested against in the spectral-overlap pruning step.
    enum class PruneMode
    {
        AllSelected,
        LatestOnly
    };

    std::string_view to_string(PruneMode m);
    PruneMode prune_mode_from_string(std::string_view name);

    // All physical and algorithmic parameters of one experiment.
    // Defaults follow a 2 GHz NLoS micro-cell: 1 km x 1 km square cell, 20 MHz, 9 dB noise figure.
    struct ScenarioConfig
    {
        unsigned M = 64;                  // BS antennas
        unsigned K = 30;                  // users in the cell
        unsigned K_s = 8;                 // max. simultaneously served users
        double R = 500.0;                 // half side length of the square cell [m]
        double R_th_factor = 0.1;         // exclusion radius around the BS, in units of R
        double f_c = 2.0e9;               // carrier frequency [Hz]
        double d_over_lambda = 0.5;       // element spacing [wavelengths]
        double BW = 20.0e6;               // bandwidth [Hz]
        double noise_figure_dB = 9.0;     // receiver noise figure
        double T0 = 290.0;                // noise temperature [K]
        double p_dBm = 10.0;              // per-user transmit power (also used as pilot power)
        double epsilon = 0.5;             // spectral-overlap threshold in [0, 1]
        unsigned N_C = 20;                // clusters in the cell
        unsigned N_p = 6;                 // paths per cluster
        double vr_radius = 200.0;         // visibility-region radius [m]
        double vr_transition = 20.0;      // raised-cosine transition width at the VR edge [m]
        double h_BS = 5.0;                // BS antenna height [m]
        double h_MS = 1.5;                // MS antenna height [m]
        unsigned drops = 200;             // Monte Carlo drops
        std::uint64_t seed = 1;           // master seed
        double cluster_spread_deg = 10.0; // std. dev. of per-path azimuth offsets within a cluster
        double ac_spread_dB = 3.0;        // spread of the log-normal cluster attenuation
        double gamma = 0.3;               // GWC direction constraint
        PruneMode prune_mode = PruneMode::AllSelected;

        double wavelength() const;
        double p_watt() const;

        // Throws ConfigError naming the first offending field.
        void validate() const;

        // Sets one field from its textual value; keys equal the member names above.
        void set(std::string_view key, std::string_view value);
        std::string get(std::string_view key) const;
    };

    // Known configuration keys in declaration order.
    const std::vector<std::string> &config_keys();

    // Parses flat "key = value" text. Lines starting with '#' and blank lines are ignored.
    void apply_config_text(ScenarioConfig &cfg, std::string_view text);
    void apply_config_file(ScenarioConfig &cfg, const std::string &path);

    // Environment variable naming the default config file for the CLI.
    inline constexpr const char *config_env_var = "MIMOSCHED_CONFIG";

    double dBm_to_watt(double dBm);
}

#endif
