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

#include "mimosched/precoding.hpp"

#include <cmath>
#include <numbers>

namespace mimosched
{
    arma::cx_rowvec approximate_eigenchannel(const SpectrumRow &u)
    {
        const arma::uword M = u.n_elem;
        arma::cx_rowvec g(M, arma::fill::zeros);
        for (arma::uword b = 0; b < M; ++b)
        {
            if (!(u(b) > 0.0))
                continue;
            const double amp = std::sqrt(u(b));
            const double step = 2.0 * std::numbers::pi * bin_center(static_cast<unsigned>(b), static_cast<unsigned>(M));
            for (arma::uword m = 0; m < M; ++m)
                g(m) += std::polar(amp, step * static_cast<double>(m));
        }
        return g;
    }

    EigenchannelMatrix approximate_eigenchannel(const std::vector<SpectrumRow> &rows, unsigned M)
    {
        EigenchannelMatrix G(rows.size(), M);
        for (arma::uword k = 0; k < rows.size(); ++k)
        {
            if (rows[k].n_elem != M)
                throw std::invalid_argument("approximate_eigenchannel: spectrum row length differs from M");
            G.row(k) = approximate_eigenchannel(rows[k]);
        }
        return G;
    }

    arma::cx_mat zf_unnormalized(const arma::cx_mat &A)
    {
        if (A.n_rows == 0 || A.n_rows > A.n_cols)
            throw std::invalid_argument("zf_precoder: need 1 <= rows <= columns");

        arma::cx_mat U, V;
        arma::vec s;
        if (!arma::svd(U, s, V, A))
            throw std::runtime_error("zf_precoder: SVD failed");

        const double s_min = s.min();
        if (!(s_min > 0.0) || s.max() / s_min > zf_max_condition)
        {
            // Rows taking part in the weakest direction.
            const arma::cx_vec weak = U.col(s.n_elem - 1);
            const double peak = arma::abs(weak).max();
            std::vector<std::size_t> rows;
            for (arma::uword k = 0; k < weak.n_elem; ++k)
                if (std::abs(weak(k)) > 1e-3 * peak)
                    rows.push_back(k);
            std::string names;
            for (auto r : rows)
                names += (names.empty() ? "" : ", ") + std::to_string(r);
            throw RankDeficientError("zf_precoder: matrix is rank deficient (condition number " +
                                         std::to_string(s_min > 0.0 ? s.max() / s_min : INFINITY) +
                                         "), offending rows: " + names,
                                     std::move(rows));
        }

        // A^H (A A^H)^{-1} = V diag(1/s) U^H
        return V.head_cols(s.n_elem) * arma::diagmat(1.0 / s) * U.t();
    }

    namespace
    {
        Precoder normalize_columns(arma::cx_mat W, double power_per_user)
        {
            for (arma::uword k = 0; k < W.n_cols; ++k)
            {
                const double n = arma::norm(W.col(k), 2);
                if (n > 0.0)
                    W.col(k) /= n;
            }
            Precoder p;
            p.power = arma::vec(W.n_cols, arma::fill::value(power_per_user));
            p.W = std::move(W);
            return p;
        }
    }

    Precoder zf_precoder(const arma::cx_mat &A, double power_per_user)
    {
        return normalize_columns(zf_unnormalized(A), power_per_user);
    }

    Precoder eigen_beamformer(const std::vector<CovarianceMatrix> &R_list, double power_per_user)
    {
        if (R_list.empty())
            throw std::invalid_argument("eigen_beamformer: no covariance matrices");

        const arma::uword M = R_list.front().n_rows;
        arma::cx_mat W(M, R_list.size());
        for (arma::uword k = 0; k < R_list.size(); ++k)
        {
            const auto &R = R_list[k];
            if (R.n_rows != M || R.n_cols != M)
                throw std::invalid_argument("eigen_beamformer: covariance dimensions differ");

            arma::vec eigval;
            arma::cx_mat eigvec;
            if (!arma::eig_sym(eigval, eigvec, arma::cx_mat(R)))
                throw std::runtime_error("eigen_beamformer: eigendecomposition failed");

            const double top = eigval(M - 1);
            if (!(top > 0.0))
                throw std::invalid_argument("eigen_beamformer: covariance " + std::to_string(k) + " is zero");

            // Eigenvalues are ascending; collect the top eigenspace.
            arma::uword first = M - 1;
            while (first > 0 && top - eigval(first - 1) <= 1e-10 * top)
                --first;

            arma::cx_vec w;
            if (first == M - 1)
                w = eigvec.col(M - 1);
            else
            {
                const arma::cx_mat basis = eigvec.cols(first, M - 1);
                for (arma::uword e = 0; e < M; ++e)
                {
                    arma::cx_vec proj = basis * basis.row(e).t(); // projection of e_e onto the eigenspace
                    if (arma::norm(proj, 2) > 1e-6)
                    {
                        w = proj;
                        break;
                    }
                }
            }
            w /= arma::norm(w, 2);

            // Fix the global phase: the largest entry becomes real positive.
            const arma::uword peak = arma::index_max(arma::abs(w));
            const double mag = std::abs(w(peak));
            w *= std::conj(w(peak)) / mag;
            W.col(k) = w;
        }

        Precoder p;
        p.W = std::move(W);
        p.power = arma::vec(R_list.size(), arma::fill::value(power_per_user));
        return p;
    }

    arma::cx_mat mmse_filter(const CovarianceMatrix &R, double sigma2)
    {
        const arma::uword M = R.n_rows;
        if (sigma2 <= 0.0)
            return arma::eye<arma::cx_mat>(M, M);
        // R and (R + sigma2 I)^{-1} commute.
        const arma::cx_mat A = R + sigma2 * arma::eye<arma::cx_mat>(M, M);
        return arma::solve(A, R, arma::solve_opts::likely_sympd);
    }

    ChannelMatrix mmse_from_observation(const ChannelMatrix &Y, const std::vector<CovarianceMatrix> &R_list,
                                        double sigma2)
    {
        if (R_list.size() != Y.n_rows)
            throw std::invalid_argument("mmse_estimate: one covariance per user required");
        ChannelMatrix H_est(Y.n_rows, Y.n_cols);
        for (arma::uword k = 0; k < Y.n_rows; ++k)
            H_est.row(k) = Y.row(k) * mmse_filter(R_list[k], sigma2);
        return H_est;
    }

    ChannelMatrix mmse_estimate(const ChannelMatrix &H_true, const std::vector<CovarianceMatrix> &R_list,
                                double noise_power, double pilot_power, Rng &rng)
    {
        if (!(pilot_power > 0.0))
            throw std::invalid_argument("mmse_estimate: pilot power must be positive");
        const double sigma2 = noise_power / pilot_power;

        std::normal_distribution<double> n(0.0, std::sqrt(0.5 * sigma2));
        ChannelMatrix Y = H_true;
        for (arma::uword m = 0; m < Y.n_cols; ++m)
            for (arma::uword k = 0; k < Y.n_rows; ++k)
            {
                const double re = n(rng);
                const double im = n(rng);
                Y(k, m) += std::complex<double>(re, im);
            }
        return mmse_from_observation(Y, R_list, sigma2);
    }
}
