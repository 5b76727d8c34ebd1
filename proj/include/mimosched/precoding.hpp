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

#ifndef mimosched_precoding_H
#define mimosched_precoding_H

#include "mimosched/channel.hpp"
#include "mimosched/rng.hpp"
#include "mimosched/spectrum.hpp"

#include <armadillo>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mimosched
{
    // K_s x M matrix of approximate eigenchannels, one row per selected user.
    using EigenchannelMatrix = arma::cx_mat;

    struct Precoder
    {
        arma::cx_mat W;     // M x K_s, unit-norm columns
        arma::vec power;    // per-user transmit power [W]
    };

    // Thrown by zf_precoder when the matrix to invert is (numerically) rank deficient.
    // `rows` lists the rows involved in the near-dependency, in ascending order.
    class RankDeficientError : public std::runtime_error
    {
    public:
        RankDeficientError(const std::string &what, std::vector<std::size_t> rows)
            : std::runtime_error(what), rows_(std::move(rows)) {}
        const std::vector<std::size_t> &rows() const noexcept { return rows_; }

    private:
        std::vector<std::size_t> rows_;
    };

    inline constexpr double zf_max_condition = 1e12;

    // g_km = sum_b sqrt(u_k[b]) exp(j 2 pi (m-1) (b/M - 1/2)).
    arma::cx_rowvec approximate_eigenchannel(const SpectrumRow &u);
    EigenchannelMatrix approximate_eigenchannel(const std::vector<SpectrumRow> &rows, unsigned M);

    // A^H (A A^H)^{-1} without column normalization; A * result = I.
    arma::cx_mat zf_unnormalized(const arma::cx_mat &A);

    // Zero-forcing precoder with unit-norm columns and equal power per user.
    Precoder zf_precoder(const arma::cx_mat &A, double power_per_user = 1.0);

    // Dominant eigenvector of each covariance. A degenerate top eigenspace resolves to the normalized
    // projection of the first canonical basis vector that is not orthogonal to it (R = I gives e_1).
    Precoder eigen_beamformer(const std::vector<CovarianceMatrix> &R_list, double power_per_user = 1.0);

    // Q = R (R + sigma2 I)^{-1}, the LMMSE filter of one user for observation y = h + n, n ~ CN(0, sigma2 I).
    arma::cx_mat mmse_filter(const CovarianceMatrix &R, double sigma2);

    // Row k of the result is y_k Q_k with y_k = h_k + n_k.
    ChannelMatrix mmse_from_observation(const ChannelMatrix &Y, const std::vector<CovarianceMatrix> &R_list,
                                        double sigma2);

    // Orthogonal-pilot channel estimate: per-antenna observation noise sigma'^2 = noise_power / pilot_power.
    ChannelMatrix mmse_estimate(const ChannelMatrix &H_true, const std::vector<CovarianceMatrix> &R_list,
                                double noise_power, double pilot_power, Rng &rng);
}

#endif
