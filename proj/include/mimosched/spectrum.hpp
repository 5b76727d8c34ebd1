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

#ifndef mimosched_spectrum_H
#define mimosched_spectrum_H

#include "mimosched/config.hpp"
#include "mimosched/geometry.hpp"

#include <armadillo>
#include <vector>

namespace mimosched
{
    // Binned eigenvalue spectrum of one user: M nonnegative bin masses, bin b centred at b/M - 1/2
    // in normalized spatial frequency.
    using SpectrumRow = arma::rowvec;

    // K x M matrix U, row k is the spectrum row of user k.
    using SpectrumMatrix = arma::mat;

    double bin_center(unsigned b, unsigned M);

    // Index of the angular bin containing f = -(d/lambda) sin(phi). Bin b covers
    // (b/M - 1/2 - 1/(2M), b/M - 1/2 + 1/(2M)]; f is first wrapped modulo 1 into the union of all bins.
    unsigned bin_index(double phi, double d_over_lambda, unsigned M);

    // bins[b] = sum of (a_ga)^2 over all paths that fall into bin b.
    SpectrumRow spectrum_row(const UserLink &link, unsigned M, double d_over_lambda);
    SpectrumRow spectrum_row(const UserLink &link, const ScenarioConfig &cfg);

    SpectrumMatrix build_U(const std::vector<UserLink> &links, const ScenarioConfig &cfg);

    // Number of strictly positive bins.
    unsigned occupied_bins(const SpectrumRow &u);

    // Kolmogorov-Smirnov distance between the empirical CDFs of two samples.
    double ks_distance(arma::vec a, arma::vec b);

    struct SpectrumCheck
    {
        unsigned M = 0;
        double ks = 0.0;
        unsigned occupied_bins = 0;
    };

    // For each M, compares the eigenvalues of R(M) / M against the M bin masses of the spectrum row.
    // Eigenvalues below 1e-12 of the largest eigenvalue are treated as zero.
    std::vector<SpectrumCheck> asymptotic_spectrum_check(const UserLink &link, double d_over_lambda,
                                                         const std::vector<unsigned> &M_list);
}

#endif
