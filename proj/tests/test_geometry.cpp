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

#include "mimosched/geometry.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace mimosched;

namespace
{
    ScenarioConfig single_cluster_config()
    {
        ScenarioConfig c;
        c.N_C = 1;
        c.N_p = 4;
        c.h_BS = 1.5;
        c.h_MS = 1.5; // 3D distance equals ground distance
        return c;
    }

    Cluster broadside_cluster(double ac)
    {
        Cluster c;
        c.position = {200.0, 0.0, 1.5};
        c.vr_center = {100.0, 0.0};
        c.vr_radius = 50.0;
        c.attenuation_AC = ac;
        c.path_offsets = {0.0, 0.01, -0.01, 0.02};
        return c;
    }
}

TEST_CASE("place_users respects the exclusion radius and is deterministic")
{
    ScenarioConfig c;
    c.K = 1;
    c.R = 500.0;
    Rng rng(3);
    const auto p = place_users(c, rng);
    REQUIRE(p.size() == 1);
    CHECK(std::hypot(p[0].x, p[0].y) >= 50.0);

    c.K = 500;
    Rng a(9), b(9);
    const auto pa = place_users(c, a);
    const auto pb = place_users(c, b);
    for (std::size_t k = 0; k < pa.size(); ++k)
    {
        CHECK(pa[k].x == pb[k].x);
        CHECK(pa[k].y == pb[k].y);
        CHECK(std::hypot(pa[k].x, pa[k].y) >= 50.0);
        CHECK(std::abs(pa[k].x) <= 500.0);
        CHECK(std::abs(pa[k].y) <= 500.0);
    }
}

TEST_CASE("place_users without exclusion covers the full square")
{
    ScenarioConfig c;
    c.K = 4000;
    c.R_th_factor = 0.0;
    Rng rng(5);
    const auto p = place_users(c, rng);
    int inner = 0;
    for (const auto &q : p)
        inner += std::hypot(q.x, q.y) < 50.0 ? 1 : 0;
    // Disc of radius 50 covers pi*50^2 / 1000^2 = 0.785% of the square.
    CHECK(inner > 10);
    CHECK(inner < 60);
}

TEST_CASE("path loss values")
{
    CHECK(path_loss_dB(100.0, 0.15) == doctest::Approx(90.46237209932829).epsilon(1e-12));
    CHECK(path_loss_dB(1.0, 4.0 * std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(path_loss_linear(1.0, 4.0 * std::numbers::pi) == doctest::Approx(1.0));
    CHECK(path_loss_linear(1000.0, 0.15) / path_loss_linear(100.0, 0.15) == doctest::Approx(std::pow(10.0, -2.6)));
    CHECK_THROWS_AS(path_loss_linear(0.0, 0.15), std::domain_error);
    CHECK_THROWS_AS(path_loss_linear(-3.0, 0.15), std::domain_error);

    double prev = path_loss_linear(1.0, 0.15);
    for (double d = 2.0; d < 2000.0; d *= 1.37)
    {
        const double g = path_loss_linear(d, 0.15);
        CHECK(g < prev);
        prev = g;
    }
}

TEST_CASE("vr_gain transition")
{
    CHECK(vr_gain(0.0, 100.0, 20.0) == 1.0);
    CHECK(vr_gain(101.0, 100.0, 20.0) == 0.0);
    CHECK(vr_gain(90.0, 100.0, 20.0) == doctest::Approx(0.5));
    CHECK(vr_gain(80.0, 100.0, 20.0) == 1.0);
    CHECK(vr_gain(100.0, 100.0, 20.0) == doctest::Approx(0.0));
    CHECK(vr_gain(99.999, 100.0, 0.0) == 1.0);
    CHECK(vr_gain(100.001, 100.0, 0.0) == 0.0);

    double prev = 1.0;
    for (double d = 0.0; d <= 110.0; d += 0.25)
    {
        const double g = vr_gain(d, 100.0, 20.0);
        CHECK(g <= prev);
        CHECK(prev - g < 0.05); // no jumps at 0.25 m resolution
        prev = g;
    }
}

TEST_CASE("generate_mpcs amplitudes follow the geometry")
{
    const ScenarioConfig cfg = single_cluster_config();
    const double lambda = cfg.wavelength();
    Rng rng(1);

    const UserLink link = generate_mpcs(0, {100.0, 0.0}, {broadside_cluster(1.0)}, cfg, rng);
    REQUIRE(link.mpcs.size() == 4);
    CHECK_FALSE(link.fallback_cluster);
    for (const auto &m : link.mpcs)
    {
        CHECK(m.a_ga == doctest::Approx(std::sqrt(path_loss_linear(100.0, lambda))));
        CHECK(std::abs(m.dod_phi) < 0.03);
        CHECK(m.delay_tau > 0.0);
    }

    // With lambda = 0.15 m the amplitude is sqrt(10^-9.046237).
    CHECK(std::sqrt(path_loss_linear(100.0, 0.15)) == doctest::Approx(std::sqrt(std::pow(10.0, -9.046237209932829))));

    const UserLink half = generate_mpcs(0, {100.0, 0.0}, {broadside_cluster(0.5)}, cfg, rng);
    for (std::size_t i = 0; i < half.mpcs.size(); ++i)
        CHECK(half.mpcs[i].a_ga == doctest::Approx(link.mpcs[i].a_ga / std::sqrt(2.0)));
}

TEST_CASE("generate_mpcs falls back to a local cluster")
{
    const ScenarioConfig cfg = single_cluster_config();
    Rng rng(1);
    const UserLink link = generate_mpcs(3, {-400.0, 300.0}, {broadside_cluster(1.0)}, cfg, rng);
    CHECK(link.fallback_cluster);
    CHECK(link.mpcs.size() == cfg.N_p);
    CHECK(link.user_index == 3);
    const double az = std::atan2(300.0, -400.0);
    for (const auto &m : link.mpcs)
    {
        CHECK(m.a_ga > 0.0);
        CHECK(std::abs(wrap_angle(m.dod_phi - az)) < 1.0);
    }

    CHECK_THROWS_AS(generate_mpcs(0, {0.0, 0.0}, {}, cfg, rng), std::invalid_argument);
}

TEST_CASE("drops satisfy amplitude and angle invariants and are reproducible")
{
    ScenarioConfig cfg;
    cfg.K = 40;
    for (std::uint64_t seed = 0; seed < 5; ++seed)
    {
        Rng a(seed), b(seed);
        const Drop da = generate_drop(cfg, a);
        const Drop db = generate_drop(cfg, b);
        REQUIRE(da.links.size() == cfg.K);
        for (std::size_t k = 0; k < da.links.size(); ++k)
        {
            REQUIRE_FALSE(da.links[k].mpcs.empty());
            REQUIRE(da.links[k].mpcs.size() == db.links[k].mpcs.size());
            CHECK(da.links[k].mpcs.size() % cfg.N_p == 0);
            for (std::size_t i = 0; i < da.links[k].mpcs.size(); ++i)
            {
                const auto &m = da.links[k].mpcs[i];
                CHECK(std::isfinite(m.a_ga));
                CHECK(m.a_ga >= 0.0);
                CHECK(m.dod_phi > -std::numbers::pi);
                CHECK(m.dod_phi <= std::numbers::pi);
                CHECK(m.a_ga == db.links[k].mpcs[i].a_ga);
                CHECK(m.dod_phi == db.links[k].mpcs[i].dod_phi);
            }
        }
        for (const auto &c : da.clusters)
        {
            CHECK(c.attenuation_AC > 0.0);
            CHECK(c.attenuation_AC <= 1.0);
            CHECK(c.vr_radius > 0.0);
        }
    }
}

TEST_CASE("noise power")
{
    ScenarioConfig c;
    CHECK(noise_power(c) == doctest::Approx(6.36241029449455e-13).epsilon(1e-9));
    CHECK(10.0 * std::log10(noise_power(c) / 1e-3) == doctest::Approx(-91.96378).epsilon(1e-6));

    c.noise_figure_dB = 0.0;
    CHECK(noise_power(c) == doctest::Approx(boltzmann * c.T0 * c.BW));

    const double base = noise_power(c);
    c.BW *= 2.0;
    CHECK(noise_power(c) == doctest::Approx(2.0 * base));
}

TEST_CASE("wrap_angle")
{
    CHECK(wrap_angle(std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_angle(3.0 * std::numbers::pi / 2.0) == doctest::Approx(-std::numbers::pi / 2.0));
    CHECK(wrap_angle(0.25) == doctest::Approx(0.25));
}
