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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

using namespace mimosched;
using cd = std::complex<double>;

namespace
{
    UserLink link_of(std::initializer_list<std::pair<double, double>> amp_phi)
    {
        UserLink l;
        for (const auto &[a, phi] : amp_phi)
        {
            MultipathComponent m;
            m.a_ga = a;
            m.dod_phi = phi;
            m.a_sf = {1.0, 0.0};
            l.mpcs.push_back(m);
        }
        return l;
    }

    bool near(cd a, cd b, double tol = 1e-12) { return std::abs(a - b) <= tol; }
}

TEST_CASE("draw_small_scale has unit mean power and is deterministic")
{
    UserLink l = link_of({{1.0, 0.0}});
    Rng rng(17);
    double acc = 0.0;
    cd mean{0.0, 0.0};
    const int n = 100000;
    for (int i = 0; i < n; ++i)
    {
        draw_small_scale(l, rng);
        acc += std::norm(l.mpcs[0].a_sf);
        mean += l.mpcs[0].a_sf;
    }
    CHECK(acc / n == doctest::Approx(1.0).epsilon(0.02));
    CHECK(std::abs(mean / double(n)) < 0.02);

    UserLink a = link_of({{1.0, 0.1}, {2.0, 0.3}});
    UserLink b = a;
    Rng ra(4), rb(4);
    draw_small_scale(a, ra);
    draw_small_scale(b, rb);
    for (std::size_t i = 0; i < a.mpcs.size(); ++i)
        CHECK(a.mpcs[i].a_sf == b.mpcs[i].a_sf);
}

TEST_CASE("channel rows")
{
    SUBCASE("broadside path gives all ones")
    {
        const auto h = channel_row(link_of({{1.0, 0.0}}), 8, 0.5);
        for (arma::uword m = 0; m < h.n_elem; ++m)
            CHECK(near(h(m), 1.0));
    }
    SUBCASE("endfire path at half-wavelength spacing alternates sign")
    {
        const auto h = channel_row(link_of({{1.0, std::numbers::pi / 2}}), 2, 0.5);
        CHECK(near(h(0), 1.0));
        CHECK(near(h(1), -1.0));
    }
    SUBCASE("conjugate pair is real")
    {
        const double a = 0.7, phi = 0.4;
        const auto h = channel_row(link_of({{a, phi}, {a, -phi}}), 6, 0.5);
        for (arma::uword m = 0; m < h.n_elem; ++m)
        {
            const double expect = 2.0 * a * std::cos(-2.0 * std::numbers::pi * 0.5 * double(m) * std::sin(phi));
            CHECK(near(h(m), expect));
        }
    }
    SUBCASE("zero geometric amplitude contributes nothing")
    {
        UserLink l = link_of({{0.0, 0.3}});
        l.mpcs[0].a_sf = {5.0, -2.0};
        CHECK(arma::norm(channel_row(l, 4, 0.5)) == 0.0);
    }
}

TEST_CASE("assemble_channel stacks users in order")
{
    ScenarioConfig cfg;
    cfg.M = 4;
    const std::vector<UserLink> links{link_of({{1.0, 0.0}}), link_of({{2.0, 0.5}})};
    const ChannelMatrix H = assemble_channel(links, cfg);
    REQUIRE(H.n_rows == 2);
    REQUIRE(H.n_cols == 4);
    CHECK(arma::approx_equal(arma::cx_rowvec(H.row(1)), channel_row(links[1], 4, 0.5), "absdiff", 1e-14));
}

TEST_CASE("covariance examples")
{
    SUBCASE("broadside gives all ones")
    {
        const auto R = covariance(link_of({{1.0, 0.0}}), 5, 0.5);
        CHECK(arma::approx_equal(R, arma::cx_mat(arma::ones(5, 5), arma::zeros(5, 5)), "absdiff", 1e-12));
        CHECK(arma::rank(R) == 1);
    }
    SUBCASE("endfire at M=2")
    {
        const auto R = covariance(link_of({{1.0, std::numbers::pi / 2}}), 2, 0.5);
        CHECK(near(R(0, 0), 1.0));
        CHECK(near(R(0, 1), -1.0));
        CHECK(near(R(1, 0), -1.0));
        CHECK(near(R(1, 1), 1.0));
        const auto r = correlation_sequence(R);
        CHECK(near(r(0), 1.0));
        CHECK(near(r(1), -1.0));
    }
    SUBCASE("entries follow the formula")
    {
        const UserLink l = link_of({{0.5, 0.2}, {1.5, -1.1}, {0.3, 2.9}});
        const auto R = covariance(l, 6, 0.5);
        const double alpha = -2.0 * std::numbers::pi * 0.5;
        for (int m = 0; m < 6; ++m)
            for (int n = 0; n < 6; ++n)
            {
                cd e{0.0, 0.0};
                for (const auto &p : l.mpcs)
                    e += p.a_ga * p.a_ga * std::exp(cd{0.0, alpha * (n - m) * std::sin(p.dod_phi)});
                CHECK(near(R(m, n), e));
            }
        CHECK(std::real(arma::trace(R)) == doctest::Approx(6.0 * (0.25 + 2.25 + 0.09)));
    }
    SUBCASE("fading draws do not change the covariance")
    {
        UserLink l = link_of({{1.0, 0.3}, {0.5, -0.2}});
        const auto R0 = covariance(l, 4, 0.5);
        Rng rng(1);
        draw_small_scale(l, rng);
        CHECK(arma::approx_equal(R0, covariance(l, 4, 0.5), "absdiff", 0.0));
    }
}

TEST_CASE("covariance invariants on generated drops")
{
    ScenarioConfig cfg;
    cfg.M = 16;
    cfg.K = 20;
    Rng rng(99);
    const Drop d = generate_drop(cfg, rng);
    for (const auto &l : d.links)
    {
        const auto R = covariance(l, cfg);
        const double tr = std::real(arma::trace(R));
        CHECK(arma::norm(R - R.t(), "fro") <= 1e-12 * arma::norm(R, "fro"));
        const arma::vec ev = arma::eig_sym(arma::cx_mat(0.5 * (R + R.t())));
        CHECK(ev.min() >= -1e-10 * tr);
        for (arma::uword m = 1; m < R.n_rows; ++m)
            for (arma::uword n = 1; n < R.n_cols; ++n)
                CHECK(std::abs(R(m, n) - R(m - 1, n - 1)) <= 1e-12 * tr);
        const auto r = correlation_sequence(R);
        CHECK(std::real(r(0)) == doctest::Approx(tr / cfg.M));
        CHECK(std::abs(std::imag(r(0))) < 1e-15 * tr);
    }
}

TEST_CASE("empirical covariance converges to R")
{
    UserLink l = link_of({{1.0, 0.3}, {0.8, -0.5}, {0.4, 1.2}});
    const unsigned M = 8;
    const auto R = covariance(l, M, 0.5);
    Rng rng(2024);
    arma::cx_mat acc(M, M, arma::fill::zeros);
    const int n = 10000;
    for (int i = 0; i < n; ++i)
    {
        draw_small_scale(l, rng);
        const arma::cx_rowvec h = channel_row(l, M, 0.5);
        acc += h.t() * h;
    }
    acc /= double(n);
    CHECK(arma::abs(acc - R).max() <= 0.05 * arma::abs(R).max());
}

TEST_CASE("correlation_sequence rejects non-Toeplitz input")
{
    arma::cx_mat R(3, 3, arma::fill::eye);
    R(2, 2) = 2.0;
    CHECK_THROWS_AS(correlation_sequence(R), std::domain_error);

    const arma::cx_mat ones(arma::ones(4, 4), arma::zeros(4, 4));
    const auto r = correlation_sequence(ones);
    for (arma::uword m = 0; m < 4; ++m)
        CHECK(near(r(m), 1.0));
}
