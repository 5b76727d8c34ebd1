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

#include "mimosched/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimosched
{
    double wrap_angle(double phi)
    {
        constexpr double two_pi = 2.0 * std::numbers::pi;
        phi = std::fmod(phi, two_pi); // (-2pi, 2pi)
        if (phi <= -std::numbers::pi)
            phi += two_pi;
        else if (phi > std::numbers::pi)
            phi -= two_pi;
        return phi;
    }

    std::vector<Point2> place_users(const ScenarioConfig &cfg, Rng &rng)
    {
        constexpr std::size_t max_resamples = 1000000;
        std::uniform_real_distribution<double> coord(-cfg.R, cfg.R);
        const double r_th = cfg.R_th_factor * cfg.R;

        std::vector<Point2> users;
        users.reserve(cfg.K);
        std::size_t resamples = 0;
        while (users.size() < cfg.K)
        {
            const Point2 p{coord(rng), coord(rng)};
            if (std::hypot(p.x, p.y) >= r_th)
            {
                users.push_back(p);
                continue;
            }
            if (++resamples > max_resamples)
                throw ConfigError("R_th_factor", "exclusion zone rejects every sampled user position");
        }
        return users;
    }

    double path_loss_dB(double d_BS_MS, double lambda)
    {
        if (!(d_BS_MS > 0.0) || !(lambda > 0.0))
            throw std::domain_error("path_loss: distance and wavelength must be positive");
        return 26.0 * std::log10(d_BS_MS) + 20.0 * std::log10(4.0 * std::numbers::pi / lambda);
    }

    double path_loss_linear(double d_BS_MS, double lambda)
    {
        return std::pow(10.0, -path_loss_dB(d_BS_MS, lambda) / 10.0);
    }

    double vr_gain(double dist_to_vr_center, double vr_radius, double transition)
    {
        const double inner = vr_radius - transition;
        if (dist_to_vr_center <= inner)
            return 1.0;
        if (dist_to_vr_center >= vr_radius)
            return 0.0;
        const double t = (dist_to_vr_center - inner) / transition;
        return 0.5 * (1.0 + std::cos(std::numbers::pi * t));
    }

    std::vector<Cluster> generate_clusters(const ScenarioConfig &cfg, Rng &rng)
    {
        std::uniform_real_distribution<double> coord(-cfg.R, cfg.R);
        std::normal_distribution<double> ac_dB(0.0, cfg.ac_spread_dB);
        std::normal_distribution<double> offset(0.0, cfg.cluster_spread_deg * std::numbers::pi / 180.0);

        std::vector<Cluster> clusters(cfg.N_C);
        for (auto &c : clusters)
        {
            c.position = {coord(rng), coord(rng), cfg.h_MS};
            c.vr_center = {coord(rng), coord(rng)};
            c.vr_radius = cfg.vr_radius;
            // Attenuation in dB is the magnitude of a zero-mean Gaussian, so A_C stays in (0, 1].
            c.attenuation_AC = std::pow(10.0, -std::abs(ac_dB(rng)) / 10.0);
            c.path_offsets.resize(cfg.N_p);
            for (auto &o : c.path_offsets)
                o = offset(rng);
        }
        return clusters;
    }

    namespace
    {
        double distance(const Point3 &a, const Point3 &b)
        {
            return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) + (a.z - b.z) * (a.z - b.z));
        }

        void emit_cluster_paths(UserLink &link, const Cluster &c, double a_ga, const Point3 &bs, const Point3 &ms)
        {
            const double phi_bs = std::atan2(c.position.y, c.position.x);
            const double theta_ms = std::atan2(c.position.y - ms.y, c.position.x - ms.x);
            const double tau = (distance(bs, c.position) + distance(c.position, ms)) / speed_of_light;
            for (double off : c.path_offsets)
            {
                MultipathComponent mpc;
                mpc.dod_phi = wrap_angle(phi_bs + off);
                mpc.doa_theta = wrap_angle(theta_ms + off);
                mpc.delay_tau = tau;
                mpc.a_ga = a_ga;
                link.mpcs.push_back(mpc);
            }
        }
    }

    UserLink generate_mpcs(std::size_t user_index, Point2 user_pos, const std::vector<Cluster> &clusters,
                           const ScenarioConfig &cfg, Rng &rng)
    {
        if (clusters.empty())
            throw std::invalid_argument("generate_mpcs: cluster list is empty");

        const Point3 bs{0.0, 0.0, cfg.h_BS};
        const Point3 ms{user_pos.x, user_pos.y, cfg.h_MS};
        const double amp_pl = std::sqrt(path_loss_linear(distance(bs, ms), cfg.wavelength()));

        UserLink link;
        link.user_index = user_index;
        link.position = user_pos;
        for (const auto &c : clusters)
        {
            const double a_vr = vr_gain(std::hypot(user_pos.x - c.vr_center.x, user_pos.y - c.vr_center.y),
                                        c.vr_radius, cfg.vr_transition);
            if (a_vr > 0.0)
                emit_cluster_paths(link, c, amp_pl * a_vr * std::sqrt(c.attenuation_AC), bs, ms);
        }

        if (link.mpcs.empty())
        {
            Cluster local;
            local.position = ms;
            local.vr_center = user_pos;
            local.vr_radius = cfg.vr_radius;
            local.attenuation_AC = 1.0;
            std::normal_distribution<double> offset(0.0, cfg.cluster_spread_deg * std::numbers::pi / 180.0);
            local.path_offsets.resize(cfg.N_p);
            for (auto &o : local.path_offsets)
                o = offset(rng);
            emit_cluster_paths(link, local, amp_pl, bs, ms);
            link.fallback_cluster = true;
        }
        return link;
    }

    Drop generate_drop(const ScenarioConfig &cfg, Rng &rng)
    {
        Drop drop;
        drop.clusters = generate_clusters(cfg, rng);
        const auto positions = place_users(cfg, rng);
        drop.links.reserve(positions.size());
        for (std::size_t k = 0; k < positions.size(); ++k)
            drop.links.push_back(generate_mpcs(k, positions[k], drop.clusters, cfg, rng));
        return drop;
    }

    double noise_power(const ScenarioConfig &cfg)
    {
        return cfg.BW * boltzmann * cfg.T0 * std::pow(10.0, cfg.noise_figure_dB / 10.0);
    }
}
