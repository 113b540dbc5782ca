// SPDX-License-Identifier: Apache-2.0
//
// physec - channel based message authentication toolkit
// Copyright (C) 2026 The physec authors
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


#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "physec/channel_model.hpp"

using namespace physec;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double mean_power(const ChannelRealization &h)
{
    double p = 0.0;
    for (auto g : h.gains)
        p += std::norm(g);
    return p / static_cast<double>(h.size());
}

} // namespace

TEST_CASE("single tap gives a flat response")
{
    ChannelProcess proc({1.0}, kInf, 3);
    const auto h = sample_initial_channel(proc, 4);
    REQUIRE(h.size() == 4);
    for (auto g : h.gains)
        CHECK(g == h.gains[0]);
}

TEST_CASE("average subcarrier power is one")
{
    ChannelProcess proc({0.5, 0.5}, kInf, 11);
    double total = 0.0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        total += mean_power(sample_initial_channel(proc, 64));
    const double mean = total / draws;
    CHECK(mean >= 0.99);
    CHECK(mean <= 1.01);
}

TEST_CASE("same seed reproduces the channel bit for bit")
{
    const auto powers = exponential_tap_powers(4, 3.0);
    ChannelProcess a(powers, 100.0, 42), b(powers, 100.0, 42);
    auto ha = sample_initial_channel(a, 48, "AB");
    auto hb = sample_initial_channel(b, 48, "AB");
    CHECK(ha == hb);
    for (int i = 0; i < 10; ++i)
    {
        ha = evolve_channel(ha, a, 1);
        hb = evolve_channel(hb, b, 1);
    }
    CHECK(ha == hb);
}

TEST_CASE("exponential profile is normalized and decaying")
{
    const auto p = exponential_tap_powers(4, 3.0);
    REQUIRE(p.size() == 4);
    CHECK(p[0] + p[1] + p[2] + p[3] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p[1] / p[0] == doctest::Approx(std::pow(10.0, -0.3)));
}

TEST_CASE("process and sampling preconditions")
{
    CHECK_THROWS_AS(ChannelProcess({0.5, 0.4}, 10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelProcess({}, 10.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelProcess({1.0}, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(ChannelProcess({1.0}, 10.0, 1, -1.0), std::invalid_argument);
    ChannelProcess proc(exponential_tap_powers(4, 3.0), 10.0, 1);
    CHECK_THROWS_AS(sample_initial_channel(proc, 3), std::invalid_argument);
    const auto h = sample_initial_channel(proc, 4);
    CHECK_THROWS_AS(evolve_channel(h, proc, 0), std::invalid_argument);
}

TEST_CASE("infinite coherence freezes the channel")
{
    ChannelProcess proc(exponential_tap_powers(4, 3.0), kInf, 5);
    const auto h0 = sample_initial_channel(proc, 48);
    const auto h1 = evolve_channel(h0, proc, 7);
    CHECK(h1.gains == h0.gains);
    CHECK(h1.time_index == h0.time_index + 7);

    // A large finite coherence is frozen up to the innovation scale sqrt(2 / Tc).
    ChannelProcess slow(exponential_tap_powers(4, 3.0), 1e14, 5);
    const auto s0 = sample_initial_channel(slow, 48);
    const auto s1 = evolve_channel(s0, slow, 1);
    for (std::size_t i = 0; i < s0.size(); ++i)
        CHECK(std::abs(s1.gains[i] - s0.gains[i]) < 1e-6);
}

TEST_CASE("one coherence time decorrelates to exp(-1)")
{
    ChannelProcess proc({1.0}, 50.0, 9);
    CHECK(proc.correlation(50) == doctest::Approx(std::exp(-1.0)));
    Complex cross = 0.0;
    double power = 0.0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i)
    {
        const auto h0 = sample_initial_channel(proc, 1);
        const auto h1 = evolve_channel(h0, proc, 50);
        cross += std::conj(h0.gains[0]) * h1.gains[0];
        power += std::norm(h0.gains[0]);
    }
    const double rho = cross.real() / power;
    CHECK(std::abs(rho - std::exp(-1.0)) <= 0.02);
}

TEST_CASE("two single steps match one double step in distribution")
{
    ChannelProcess a({0.6, 0.4}, 4.0, 21), b({0.6, 0.4}, 4.0, 22);
    const int trials = 100000;
    double var_two = 0.0, var_one = 0.0;
    for (int i = 0; i < trials; ++i)
    {
        const auto x0 = sample_initial_channel(a, 8);
        const auto x2 = evolve_channel(evolve_channel(x0, a, 1), a, 1);
        const auto y0 = sample_initial_channel(b, 8);
        const auto y2 = evolve_channel(y0, b, 2);
        var_two += std::norm(x2.gains[3] - x0.gains[3]);
        var_one += std::norm(y2.gains[3] - y0.gains[3]);
    }
    CHECK(std::abs(var_two / var_one - 1.0) <= 0.01);
    const auto t = sample_initial_channel(a, 8);
    CHECK(evolve_channel(evolve_channel(t, a, 1), a, 1).time_index == evolve_channel(t, b, 2).time_index);
    // Both match the AR(1) prediction 2 (1 - rho_2).
    CHECK(var_one / trials == doctest::Approx(2.0 * (1.0 - std::exp(-0.5))).epsilon(0.01));
}

TEST_CASE("power is stationary under evolution")
{
    ChannelProcess proc(exponential_tap_powers(4, 3.0), 3.0, 17);
    const int trials = 100000;
    double power = 0.0;
    for (int i = 0; i < trials; ++i)
    {
        auto h = sample_initial_channel(proc, 8);
        for (int s = 0; s < 5; ++s)
            h = evolve_channel(h, proc, 2);
        power += mean_power(h);
    }
    CHECK(std::abs(power / trials - 1.0) <= 0.02);
}

TEST_CASE("Rician line of sight keeps unit power")
{
    ChannelProcess proc(exponential_tap_powers(3, 3.0), 20.0, 8, 4.0);
    double power = 0.0;
    const int trials = 50000;
    auto h = sample_initial_channel(proc, 16);
    for (int i = 0; i < trials; ++i)
    {
        h = evolve_channel(h, proc, 5);
        power += mean_power(h);
    }
    CHECK(power / trials == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("independent links are spatially decorrelated")
{
    const auto powers = exponential_tap_powers(4, 3.0);
    ChannelProcess bob(powers, kInf, derive_seed(1, 1)), eve(powers, kInf, derive_seed(1, 2));
    Complex cross = 0.0;
    double pb = 0.0, pe = 0.0;
    for (int i = 0; i < 10000; ++i)
    {
        const auto hb = sample_initial_channel(bob, 48);
        const auto he = sample_initial_channel(eve, 48);
        cross += hb.gains[5] * std::conj(he.gains[5]);
        pb += std::norm(hb.gains[5]);
        pe += std::norm(he.gains[5]);
    }
    CHECK(std::abs(cross) / std::sqrt(pb * pe) < 0.05);
}

TEST_CASE("noiseless estimate is exact")
{
    ChannelProcess proc(exponential_tap_powers(4, 3.0), kInf, 2);
    NoiseModel none(0.0, 4);
    const auto h = sample_initial_channel(proc, 48);
    CHECK(estimate_channel(h, none) == h);
    CHECK_THROWS_AS(NoiseModel(-1.0, 1), std::invalid_argument);
}

TEST_CASE("estimation error has the configured variance and zero mean")
{
    ChannelProcess proc(exponential_tap_powers(2, 3.0), kInf, 2);
    const auto h = sample_initial_channel(proc, 4);
    NoiseModel noise(0.01, 6);
    const int trials = 100000;
    std::vector<double> err(4, 0.0);
    Complex bias = 0.0;
    for (int i = 0; i < trials; ++i)
    {
        const auto e = estimate_channel(h, noise);
        for (std::size_t l = 0; l < 4; ++l)
            err[l] += std::norm(e.gains[l] - h.gains[l]);
        bias += e.gains[0] - h.gains[0];
    }
    for (double v : err)
    {
        CHECK(v / trials >= 0.0098);
        CHECK(v / trials <= 0.0102);
    }
    CHECK(std::abs(bias / static_cast<double>(trials)) < 3.0 * std::sqrt(0.01 / trials));
}

TEST_CASE("zero channel estimate is pure noise")
{
    ChannelRealization zero{ComplexVector(8), 0, "AB"};
    NoiseModel noise(0.25, 3);
    double p = 0.0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i)
        p += mean_power(estimate_channel(zero, noise));
    CHECK(p / trials == doctest::Approx(0.25).epsilon(0.02));
}

TEST_CASE("noise variance follows the SNR")
{
    CHECK(noise_variance_for_snr(20.0) == doctest::Approx(0.01));
    CHECK(noise_variance_for_snr(0.0) == 1.0);
}

TEST_CASE("prefilters")
{
    ChannelProcess pb(exponential_tap_powers(4, 3.0), kInf, 31), pe(exponential_tap_powers(4, 3.0), kInf, 32);
    const auto hb = sample_initial_channel(pb, 48, "AB");
    const auto he = sample_initial_channel(pe, 48, "AE");

    CHECK(apply_prefilter(hb, Prefilter::identity(48)).gains == hb.gains);

    const auto zeroed = apply_prefilter(hb, Prefilter{ComplexVector(48)});
    for (auto g : zeroed.gains)
        CHECK(g == Complex(0.0, 0.0));

    const auto imitated = apply_prefilter(he, Prefilter::imitation(hb, he));
    for (std::size_t i = 0; i < 48; ++i)
        CHECK(std::abs(imitated.gains[i] - hb.gains[i]) <= 1e-9);

    CHECK_THROWS_AS(apply_prefilter(hb, Prefilter::identity(47)), std::invalid_argument);
}
