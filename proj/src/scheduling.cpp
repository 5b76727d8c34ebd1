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

#include "mimosched/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mimosched
{
    double f1(const SpectrumRow &u)
    {
        return arma::norm(u, 2);
    }

    double f2(const SpectrumRow &u_k, const SpectrumRow &u_j)
    {
        const double nk = arma::norm(u_k, 2);
        const double nj = arma::norm(u_j, 2);
        if (!(nk > 0.0) || !(nj > 0.0))
            throw std::domain_error("f2: spectrum rows must have positive norm");
        return std::min(1.0, std::abs(arma::dot(u_k, u_j)) / (nk * nj));
    }

    namespace
    {
        // Shared greedy loop of the two statistics-based schedulers. `better(a, b)` orders candidates.
        template <typename Better>
        ScheduleResult greedy_on_spectrum(const SpectrumMatrix &U, unsigned K_s, double epsilon, PruneMode mode,
                                          Scheme scheme, Better better)
        {
            if (K_s == 0)
                throw std::invalid_argument("schedule: K_s must be positive");

            // Column k of Ut is the spectrum of user k, contiguous in memory.
            const arma::mat Ut = U.t();
            const arma::uword K = U.n_rows;
            arma::vec norms(K);
            for (arma::uword k = 0; k < K; ++k)
                norms(k) = arma::norm(Ut.unsafe_col(k), 2);

            std::vector<std::size_t> candidates;
            for (arma::uword k = 0; k < K; ++k)
                if (norms(k) > 0.0)
                    candidates.push_back(k);
            if (candidates.empty())
                throw std::invalid_argument("schedule: spectrum matrix has no user with positive power");
            const std::vector<std::size_t> eligible = candidates;

            ScheduleResult res;
            res.scheme = scheme;
            res.epsilon_used = epsilon;

            while (!candidates.empty())
            {
                std::size_t pick = candidates.front();
                for (std::size_t k : candidates)
                    if (better(k, pick))
                        pick = k;
                res.selected.push_back(pick);
                if (res.selected.size() >= K_s)
                    break;

                const std::vector<std::size_t> &pool = mode == PruneMode::AllSelected ? candidates : eligible;
                const arma::vec u_pick = Ut.col(pick);
                std::vector<std::size_t> next;
                for (std::size_t k : pool)
                {
                    if (std::find(res.selected.begin(), res.selected.end(), k) != res.selected.end())
                        continue;
                    const double overlap = std::abs(arma::dot(Ut.unsafe_col(k), u_pick)) / (norms(k) * norms(pick));
                    if (overlap < epsilon)
                        next.push_back(k);
                }
                candidates = std::move(next);
            }
            return res;
        }
    }

    ScheduleResult cusbf_schedule(const SpectrumMatrix &U, unsigned K_s, double epsilon, PruneMode mode)
    {
        arma::vec norms(U.n_rows);
        for (arma::uword k = 0; k < U.n_rows; ++k)
            norms(k) = f1(U.row(k));
        return greedy_on_spectrum(U, K_s, epsilon, mode, Scheme::CUSBF,
                                  [&](std::size_t a, std::size_t b)
                                  { return norms(a) > norms(b) || (norms(a) == norms(b) && a < b); });
    }

    ScheduleResult jsdm_schedule(const SpectrumMatrix &U, unsigned K_s, double epsilon, PruneMode mode)
    {
        arma::vec norms(U.n_rows);
        std::vector<unsigned> count(U.n_rows);
        for (arma::uword k = 0; k < U.n_rows; ++k)
        {
            norms(k) = f1(U.row(k));
            count[k] = occupied_bins(U.row(k));
        }
        return greedy_on_spectrum(U, K_s, epsilon, mode, Scheme::JSDM,
                                  [&](std::size_t a, std::size_t b)
                                  {
                                      if (count[a] != count[b])
                                          return count[a] > count[b];
                                      if (norms(a) != norms(b))
                                          return norms(a) > norms(b);
                                      return a < b;
                                  });
    }

    ScheduleResult gwc_schedule(const ChannelMatrix &H_est, unsigned K_s, double gamma)
    {
        if (K_s == 0)
            throw std::invalid_argument("gwc_schedule: K_s must be positive");

        const arma::uword K = H_est.n_rows;
        arma::vec norms(K);
        for (arma::uword k = 0; k < K; ++k)
            norms(k) = arma::norm(H_est.row(k), 2);

        std::vector<std::size_t> candidates;
        for (arma::uword k = 0; k < K; ++k)
            if (norms(k) > 0.0)
                candidates.push_back(k);
        if (candidates.empty())
            throw std::invalid_argument("gwc_schedule: channel matrix is zero");

        ScheduleResult res;
        res.scheme = Scheme::GWC;
        res.epsilon_used = gamma;

        std::vector<arma::cx_rowvec> directions; // orthogonal components of the selected channels
        while (!candidates.empty())
        {
            std::size_t pick = candidates.front();
            double best = -1.0;
            arma::cx_rowvec best_dir;
            std::vector<std::size_t> alive;
            for (std::size_t k : candidates)
            {
                arma::cx_rowvec g = H_est.row(k);
                for (const auto &d : directions)
                    g -= arma::cdot(d, g) / arma::cdot(d, d).real() * d;
                const double gn = arma::norm(g, 2);
                if (gn <= 1e-12 * norms(k))
                    continue;
                alive.push_back(k);
                if (gn > best)
                {
                    best = gn;
                    pick = k;
                    best_dir = g;
                }
            }
            if (alive.empty())
                break;

            res.selected.push_back(pick);
            directions.push_back(best_dir);
            if (res.selected.size() >= K_s)
                break;

            std::vector<std::size_t> next;
            for (std::size_t k : alive)
            {
                if (k == pick)
                    continue;
                const double corr = std::abs(arma::cdot(best_dir, H_est.row(k))) / (norms(k) * best);
                if (corr < gamma)
                    next.push_back(k);
            }
            candidates = std::move(next);
        }
        return res;
    }
}
