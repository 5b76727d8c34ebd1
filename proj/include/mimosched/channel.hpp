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

#ifndef mimosched_channel_H
#define mimosched_channel_H

#include "mimosched/config.hpp"
#include "mimosched/geometry.hpp"

#include <armadillo>
#include <vector>

namespace mimosched
{
    // K x M instantaneous channel, row k is the downlink channel h_k of user k.
    using ChannelMatrix = arma::cx_mat;

    // M x M spatial covariance E{h^H h} of one user (Hermitian, PSD, Toeplitz).
    using CovarianceMatrix = arma::cx_mat;

    // Fills every a_sf with an independent CN(0, 1) draw.
    void draw_small_scale(UserLink &link, Rng &rng);

    // h_km = sum_i a_ga a_sf exp(j alpha (m-1) sin phi_i), alpha = -2 pi d / lambda.
    arma::cx_rowvec channel_row(const UserLink &link, unsigned M, double d_over_lambda);
    ChannelMatrix assemble_channel(const std::vector<UserLink> &links, const ScenarioConfig &cfg);

    // [R]_{m,n} = sum_i (a_ga)^2 exp(j alpha (n-m) sin phi_i). Uses geometry only, never the fading draw.
    CovarianceMatrix covariance(const UserLink &link, const ScenarioConfig &cfg);
    CovarianceMatrix covariance(const UserLink &link, unsigned M, double d_over_lambda);

    // Antenna correlation r(m) = [R]_{0,m}, m = 0..M-1, read off the first row.
    // Throws std::domain_error if R is not Hermitian Toeplitz within tolerance.
    arma::cx_vec correlation_sequence(const CovarianceMatrix &R, double rel_tol = 1e-9);
}

#endif
