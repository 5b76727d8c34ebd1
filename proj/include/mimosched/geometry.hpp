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

#ifndef mimosched_geometry_H
#define mimosched_geometry_H

#include "mimosched/config.hpp"
#include "mimosched/rng.hpp"

#include <complex>
#include <cstddef>
#include <vector>

namespace mimosched
{
    struct Point2
    {
        double x = 0.0;
        double y = 0.0;
    };

    struct Point3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;
    };

    // A scattering object shared by all users inside its visibility region (VR).
    struct Cluster
    {
        Point3 position;
        Point2 vr_center;
        double vr_radius = 0.0;
        double attenuation_AC = 1.0;              // linear power scale in (0, 1]
        std::vector<double> path_offsets;          // azimuth offset of each path [rad]
    };

    // One propagation path between the BS and a user.
    struct MultipathComponent
    {
        double dod_phi = 0.0;                      // azimuth DoD at the BS, in (-pi, pi]
        double doa_theta = 0.0;                    // azimuth DoA at the MS (stored, unused by the narrowband model)
        double delay_tau = 0.0;                    // [s] (stored, unused by the narrowband model)
        double a_ga = 0.0;                         // geometry-based amplitude, >= 0
        std::complex<double> a_sf{0.0, 0.0};       // small-scale fading coefficient, unit mean power
    };

    struct UserLink
    {
        std::size_t user_index = 0;
        Point2 position;
        std::vector<MultipathComponent> mpcs;
        bool fallback_cluster = false;             // true if no cluster was visible
    };

    // One random realization of the cell: clusters and user links.
    struct Drop
    {
        std::vector<Cluster> clusters;
        std::vector<UserLink> links;
    };

    inline constexpr double boltzmann = 1.381e-23;   // [J/K]
    inline constexpr double speed_of_light = 299792458.0;

    // K positions uniform on [-R, R]^2, rejecting points closer than R_th_factor * R to the BS at the origin.
    std::vector<Point2> place_users(const ScenarioConfig &cfg, Rng &rng);

    // NLoS micro-cell path loss L = 26 log10(d) + 20 log10(4 pi / lambda) [dB], returned as linear power gain 10^(-L/10).
    double path_loss_linear(double d_BS_MS, double lambda);
    double path_loss_dB(double d_BS_MS, double lambda);

    // Visibility gain A_VR: 1 inside (radius - transition), 0 beyond radius, raised-cosine ramp in between.
    double vr_gain(double dist_to_vr_center, double vr_radius, double transition);

    // N_C clusters uniform in the cell, each with its own VR and N_p azimuth offsets.
    std::vector<Cluster> generate_clusters(const ScenarioConfig &cfg, Rng &rng);

    // Paths of one user. Every cluster with positive visibility contributes N_p paths with
    // a_ga = sqrt(path_loss_linear) * A_VR * sqrt(A_C). A user that sees no cluster gets one local
    // cluster at its own position, so the link is never empty. a_sf is left at zero.
    UserLink generate_mpcs(std::size_t user_index, Point2 user_pos, const std::vector<Cluster> &clusters,
                           const ScenarioConfig &cfg, Rng &rng);

    // Clusters, user positions and all links of one drop (no fading yet).
    Drop generate_drop(const ScenarioConfig &cfg, Rng &rng);

    // P_n = BW k_B T0 W [watt].
    double noise_power(const ScenarioConfig &cfg);

    // Wraps an angle into (-pi, pi].
    double wrap_angle(double phi);
}

#endif
