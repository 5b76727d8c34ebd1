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

#include "mimosched/spectrum.hpp"

#include "mimosched/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mimosched
{
    double bin_center(unsigned b, unsigned M)
    {
        return static_cast<double>(b) / M - 0.5;
    }

    unsigned bin_index(double phi, double d_over_lambda, unsigned M)
    {
        if (M == 0)
            throw std::invalid_argument("bin_index: M must be positive");

        const double f = -d_over_lambda * std::sin(phi);

        // x in (b, b + 1] <=> f in bin b
        double x = (f + 0.5) * M + 0.5;
        x -= M * std::floor(x / M); // [0, M)
        if (x <= 0.0)
            x += M;
        const double b = std::ceil(x) - 1.0;
        return static_cast<unsigned>(std::clamp(b, 0.0, static_cast<double>(M - 1)));
    }

    SpectrumRow spectrum_row(const UserLink &link, unsigned M, double d_over_lambda)
    {
        SpectrumRow u(M, arma::fill::zeros);
        for (const auto &mpc : link.mpcs)
            u(bin_index(mpc.dod_phi, d_over_lambda, M)) += mpc.a_ga * mpc.a_ga;
        return u;
    }

    SpectrumRow spectrum_row(const UserLink &link, const ScenarioConfig &cfg)
    {
        return spectrum_row(link, cfg.M, cfg.d_over_lambda);
    }

    SpectrumMatrix build_U(const std::vector<UserLink> &links, const ScenarioConfig &cfg)
    {
        if (links.empty())
            throw std::invalid_argument("build_U: no users");
        SpectrumMatrix U(links.size(), cfg.M);
        for (arma::uword k = 0; k < links.size(); ++k)
            U.row(k) = spectrum_row(links[k], cfg);
        return U;
    }

    unsigned occupied_bins(const SpectrumRow &u)
    {
        return static_cast<unsigned>(arma::accu(u > 0.0));
    }

    double ks_distance(arma::vec a, arma::vec b)
    {
        if (a.is_empty() || b.is_empty())
            throw std::invalid_argument("ks_distance: empty sample");
        a = arma::sort(a);
        b = arma::sort(b);
        const double na = a.n_elem, nb = b.n_elem;

        // Walk the merged support; the supremum is attained right after some sample point.
        double d = 0.0;
        arma::uword i = 0, j = 0;
        while (i < a.n_elem || j < b.n_elem)
        {
            double x;
            if (j >= b.n_elem || (i < a.n_elem && a(i) <= b(j)))
                x = a(i);
            else
                x = b(j);
            while (i < a.n_elem && a(i) <= x)
                ++i;
            while (j < b.n_elem && b(j) <= x)
                ++j;
            d = std::max(d, std::abs(i / na - j / nb));
        }
        return d;
    }

    std::vector<SpectrumCheck> asymptotic_spectrum_check(const UserLink &link, double d_over_lambda,
                                                         const std::vector<unsigned> &M_list)
    {
        if (!std::is_sorted(M_list.begin(), M_list.end()))
            throw std::invalid_argument("asymptotic_spectrum_check: M_list must be increasing");

        std::vector<SpectrumCheck> out;
        for (unsigned M : M_list)
        {
            const CovarianceMatrix R = covariance(link, M, d_over_lambda);
            arma::vec eigval = arma::eig_sym(arma::cx_mat(R));
            eigval /= static_cast<double>(M);

            const double top = eigval.is_empty() ? 0.0 : std::max(eigval.max(), 0.0);
            eigval.transform([top](double v) { return v <= 1e-12 * top ? 0.0 : v; });

            const SpectrumRow u = spectrum_row(link, M, d_over_lambda);

            // Eigenvalues that agree with a bin mass up to rounding are the same atom.
            for (double &v : eigval)
                for (double mass : u)
                    if (std::abs(v - mass) <= 1e-9 * top)
                    {
                        v = mass;
                        break;
                    }
            out.push_back({M, ks_distance(eigval, u.t()), occupied_bins(u)});
        }
        return out;
    }
}
