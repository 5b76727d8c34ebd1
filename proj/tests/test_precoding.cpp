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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace mimosched;
using cd = std::complex<double>;

namespace
{
    arma::cx_mat random_cx(arma::uword r, arma::uword c, Rng &rng)
    {
        std::normal_distribution<double> n(0.0, 1.0);
        arma::cx_mat A(r, c);
        for (auto &x : A)
            x = cd{n(rng), n(rng)};
        return A;
    }

    // |<a, b>| / (|a| |b|), 1 means equal up to a global phase.
    double alignment(const arma::cx_vec &a, const arma::cx_vec &b)
    {
        return std::abs(arma::cdot(a, b)) / (arma::norm(a) * arma::norm(b));
    }
}

TEST_CASE("approximate eigenchannel examples")
{
    const auto g1 = approximate_eigenchannel(arma::rowvec{0, 4});
    CHECK(std::abs(g1(0) - 2.0) < 1e-12);
    CHECK(std::abs(g1(1) - 2.0) < 1e-12);

    const auto g0 = approximate_eigenchannel(arma::rowvec{4, 0});
    CHECK(std::abs(g0(0) - 2.0) < 1e-12);
    CHECK(std::abs(g0(1) + 2.0) < 1e-12);

    CHECK(arma::norm(approximate_eigenchannel(arma::rowvec(8, arma::fill::zeros))) == 0.0);

    const auto G = approximate_eigenchannel(std::vector<SpectrumRow>{arma::rowvec{0, 4}, arma::rowvec{4, 0}}, 2);
    REQUIRE(G.n_rows == 2);
    CHECK(arma::approx_equal(arma::cx_rowvec(G.row(1)), g0, "absdiff", 1e-12));
}

TEST_CASE("approximate eigenchannel energy identity")
{
    // The bin steering vectors are orthogonal, so ||g||^2 = M * sum_b u_b.
    Rng rng(6);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (unsigned M : {2u, 5u, 16u, 33u})
    {
        arma::rowvec row(M);
        for (auto &x : row)
            x = u(rng) < 1.0 ? u(rng) : 0.0;
        const auto g = approximate_eigenchannel(row);
        CHECK(std::pow(arma::norm(g), 2) == doctest::Approx(M * arma::accu(row)).epsilon(1e-10));
    }
}

TEST_CASE("zf precoder examples")
{
    SUBCASE("single matched user")
    {
        const Precoder p = zf_precoder(arma::cx_mat{{cd{1, 0}, cd{0, 0}}});
        CHECK(std::abs(p.W(0, 0) - 1.0) < 1e-12);
        CHECK(std::abs(p.W(1, 0)) < 1e-12);
        CHECK(p.power(0) == 1.0);
    }
    SUBCASE("orthonormal rows")
    {
        Rng rng(3);
        arma::cx_mat Q, R;
        arma::qr_econ(Q, R, random_cx(6, 3, rng));
        const arma::cx_mat A = Q.t();
        const Precoder p = zf_precoder(A, 0.25);
        CHECK(arma::approx_equal(p.W, arma::cx_mat(A.t()), "absdiff", 1e-12));
        CHECK(arma::all(p.power == 0.25));
    }
    SUBCASE("rank deficient")
    {
        const arma::cx_mat A{{cd{1, 0}, cd{0, 0}}, {cd{1, 0}, cd{1e-13, 0}}};
        CHECK_THROWS_AS(zf_precoder(A), RankDeficientError);
        try
        {
            zf_precoder(A);
        }
        catch (const RankDeficientError &e)
        {
            CHECK_FALSE(e.rows().empty());
        }
    }
}

TEST_CASE("zf nulling and unit columns on random matrices")
{
    Rng rng(77);
    for (int t = 0; t < 100; ++t)
    {
        const arma::uword K = 1 + t % 6, M = K + t % 10;
        const arma::cx_mat A = random_cx(K, M, rng);
        const arma::cx_mat raw = zf_unnormalized(A);
        const arma::cx_mat I = A * raw;
        double off = 0.0;
        for (arma::uword i = 0; i < K; ++i)
            for (arma::uword j = 0; j < K; ++j)
                if (i != j)
                    off = std::max(off, std::abs(I(i, j)));
        CHECK(off <= 1e-9 * arma::norm(A));
        CHECK(arma::abs(I.diag() - 1.0).max() < 1e-9);

        const Precoder p = zf_precoder(A);
        for (arma::uword k = 0; k < K; ++k)
            CHECK(std::abs(arma::norm(p.W.col(k)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("eigen-beamformer")
{
    SUBCASE("rank one")
    {
        const arma::cx_vec v{cd{1, 2}, cd{0, -1}, cd{3, 0.5}};
        const Precoder p = eigen_beamformer({arma::cx_mat(v * v.t())});
        CHECK(alignment(p.W.col(0), v) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(arma::norm(p.W.col(0)) - 1.0) < 1e-12);
    }
    SUBCASE("identity resolves to the first basis vector")
    {
        const Precoder p = eigen_beamformer({arma::cx_mat(4, 4, arma::fill::eye)}, 2.0);
        CHECK(std::abs(p.W(0, 0) - 1.0) < 1e-12);
        CHECK(arma::norm(p.W.col(0).subvec(1, 3)) < 1e-12);
        CHECK(p.power(0) == 2.0);
    }
    SUBCASE("matches an eigendecomposition when there is an eigengap")
    {
        Rng rng(12);
        const arma::cx_mat B = random_cx(6, 6, rng);
        const arma::cx_mat R = B * B.t();
        arma::vec ev;
        arma::cx_mat V;
        arma::eig_sym(ev, V, R);
        const Precoder p = eigen_beamformer({R, arma::cx_mat(6, 6, arma::fill::eye)});
        REQUIRE(p.W.n_cols == 2);
        CHECK(alignment(p.W.col(0), V.col(5)) == doctest::Approx(1.0).epsilon(1e-8));
    }
    SUBCASE("zero covariance")
    {
        CHECK_THROWS(eigen_beamformer({arma::cx_mat(3, 3, arma::fill::zeros)}));
    }
}

TEST_CASE("mmse filter examples")
{
    const arma::uword M = 4;
    const arma::cx_mat I(M, M, arma::fill::eye);
    const arma::cx_mat Q = mmse_filter(I, 1.0);
    CHECK(arma::approx_equal(Q, arma::cx_mat(0.5 * I), "absdiff", 1e-14));

    CHECK(arma::norm(mmse_filter(arma::cx_mat(M, M, arma::fill::zeros), 1.0)) == 0.0);

    Rng rng(5);
    const arma::cx_mat B = random_cx(M, M, rng);
    const arma::cx_mat R = B * B.t();
    CHECK(arma::approx_equal(mmse_filter(R, 1e-12), I, "absdiff", 1e-6));
}

TEST_CASE("mmse estimate error and orthogonality")
{
    const unsigned M = 4;
    const arma::cx_mat I(M, M, arma::fill::eye);
    Rng rng(21);
    std::normal_distribution<double> n(0.0, std::sqrt(0.5));

    double err = 0.0;
    arma::cx_mat cross(M, M, arma::fill::zeros);
    arma::cx_mat power(M, M, arma::fill::zeros);
    const int draws = 10000;
    for (int i = 0; i < draws; ++i)
    {
        arma::cx_mat h(1, M);
        for (auto &x : h)
            x = cd{n(rng), n(rng)};
        // pilot power 1 and noise 1 give sigma'^2 = 1
        const ChannelMatrix est = mmse_estimate(h, {I}, 1.0, 1.0, rng);
        const arma::cx_rowvec e = est.row(0) - h.row(0);
        err += std::pow(arma::norm(e), 2);
        cross += e.t() * est.row(0);
        power += h.row(0).t() * h.row(0);
    }
    CHECK(err / draws == doctest::Approx(M / 2.0).epsilon(0.03));
    CHECK(arma::abs(cross / double(draws)).max() < 0.05 * arma::abs(power / double(draws)).max());
}

TEST_CASE("mmse estimate limits")
{
    Rng rng(8);
    const arma::cx_mat B = random_cx(3, 3, rng);
    const arma::cx_mat R = B * B.t();
    const ChannelMatrix H = random_cx(2, 3, rng);

    const ChannelMatrix noiseless = mmse_estimate(H, {R, R}, 1e-20, 1.0, rng);
    CHECK(arma::approx_equal(noiseless, H, "absdiff", 1e-6));

    const arma::cx_mat Z(3, 3, arma::fill::zeros);
    CHECK(arma::norm(mmse_estimate(H, {Z, Z}, 1.0, 1.0, rng)) == 0.0);

    const ChannelMatrix Y = random_cx(2, 3, rng);
    const ChannelMatrix half = mmse_from_observation(Y, {arma::cx_mat(3, 3, arma::fill::eye), arma::cx_mat(3, 3, arma::fill::eye)}, 1.0);
    CHECK(arma::approx_equal(half, arma::cx_mat(0.5 * Y), "absdiff", 1e-14));
}
