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

#include "mimosched/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mimosched
{
    void draw_small_scale(UserLink &link, Rng &rng)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        for (auto &mpc : link.mpcs)
        {
            const double re = n(rng);
            const double im = n(rng);
            mpc.a_sf = {re, im};
        }
    }

    arma::cx_rowvec channel_row(const UserLink &link, unsigned M, double d_over_lambda)
    {
        const double alpha = -2.0 * std::numbers::pi * d_over_lambda;
        arma::cx_rowvec h(M, arma::fill::zeros);
        for (const auto &mpc : link.mpcs)
        {
            const std::complex<double> a = mpc.a_ga * mpc.a_sf;
            if (a == 0.0)
                continue;
            const double step = alpha * std::sin(mpc.dod_phi);
            for (unsigned m = 0; m < M; ++m)
                h(m) += a * std::polar(1.0, step * m);
        }
        return h;
    }

    ChannelMatrix assemble_channel(const std::vector<UserLink> &links, const ScenarioConfig &cfg)
    {
        ChannelMatrix H(links.size(), cfg.M);
        for (arma::uword k = 0; k < links.size(); ++k)
            H.row(k) = channel_row(links[k], cfg.M, cfg.d_over_lambda);
        return H;
    }

    CovarianceMatrix covariance(const UserLink &link, unsigned M, double d_over_lambda)
    {
        const double alpha = -2.0 * std::numbers::pi * d_over_lambda;

        // r(l) = [R]_{m,m+l}; the matrix is filled from this sequence, which makes it Toeplitz by construction.
        arma::cx_vec r(M, arma::fill::zeros);
        for (const auto &mpc : link.mpcs)
        {
            const double power = mpc.a_ga * mpc.a_ga;
            const double step = alpha * std::sin(mpc.dod_phi);
            for (unsigned l = 0; l < M; ++l)
                r(l) += power * std::polar(1.0, step * l);
        }
        r(0) = r(0).real();

        CovarianceMatrix R(M, M);
        for (unsigned m = 0; m < M; ++m)
            for (unsigned n = 0; n < M; ++n)
                R(m, n) = n >= m ? r(n - m) : std::conj(r(m - n));
        return R;
    }

    CovarianceMatrix covariance(const UserLink &link, const ScenarioConfig &cfg)
    {
        return covariance(link, cfg.M, cfg.d_over_lambda);
    }

    arma::cx_vec correlation_sequence(const CovarianceMatrix &R, double rel_tol)
    {
        if (R.n_rows != R.n_cols || R.n_rows == 0)
            throw std::domain_error("correlation_sequence: covariance must be square and non-empty");

        const arma::uword M = R.n_rows;
        const double scale = std::max(arma::abs(R).max(), 1e-300);
        for (arma::uword m = 0; m < M; ++m)
            for (arma::uword n = 0; n < M; ++n)
            {
                const auto ref = n >= m ? R(0, n - m) : std::conj(R(0, m - n));
                if (std::abs(R(m, n) - ref) > rel_tol * scale)
                    throw std::domain_error("correlation_sequence: covariance is not Hermitian Toeplitz at (" +
                                            std::to_string(m) + ", " + std::to_string(n) + ")");
            }
        return R.row(0).st();
    }
}
