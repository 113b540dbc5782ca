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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "physec/features.hpp"

using namespace physec;

namespace {

ChannelRealization make(ComplexVector g, std::int64_t t = 0)
{
    return ChannelRealization{std::move(g), t, "AB"};
}

ChannelRealization random_estimate(std::size_t m, std::uint64_t seed)
{
    Rng rng(seed);
    ComplexVector g(m);
    for (auto &x : g)
        x = rng.complex_normal(1.0);
    return make(g);
}

double sum(const std::vector<double> &v)
{
    return std::accumulate(v.begin(), v.end(), 0.0);
}

} // namespace

TEST_CASE("equally spaced subcarrier indices")
{
    std::vector<std::size_t> all(48);
    std::iota(all.begin(), all.end(), 0);
    CHECK(subcarrier_indices(48, 48) == all);
    CHECK(subcarrier_indices(48, 4) == std::vector<std::size_t>{0, 12, 24, 36});
    std::vector<std::size_t> sixteen;
    for (std::size_t i = 0; i < 16; ++i)
        sixteen.push_back(3 * i);
    CHECK(subcarrier_indices(48, 16) == sixteen);
    for (std::size_t m = 1; m <= 48; ++m)
    {
        const auto idx = subcarrier_indices(48, m);
        for (std::size_t i = 0; i < m; ++i)
            CHECK(idx[i] == i * 48 / m);
    }
    CHECK_THROWS_AS(subcarrier_indices(48, 0), std::invalid_argument);
    CHECK_THROWS_AS(subcarrier_indices(48, 49), std::invalid_argument);
}

TEST_CASE("selection picks the indexed gains")
{
    const auto est = random_estimate(48, 1);
    CHECK(select_subcarriers(est, 48).gains == est.gains);
    const auto four = select_subcarriers(est, 4);
    REQUIRE(four.size() == 4);
    CHECK(four.gains[1] == est.gains[12]);
    CHECK(four.gains[3] == est.gains[36]);
    CHECK(four.time_index == est.time_index);
    CHECK_THROWS_AS(select_subcarriers(est, 0), std::invalid_argument);
}

TEST_CASE("normalized magnitude examples")
{
    auto f = normalize_magnitude(make({1.0, 1.0, 1.0, 1.0}));
    CHECK(f.kind == FeatureKind::NormalizedMagnitude);
    for (double v : f.values)
        CHECK(v == doctest::Approx(0.25));

    f = normalize_magnitude(make({{3.0, 4.0}, 0.0, 0.0, 0.0}));
    CHECK(f.values == std::vector<double>{1.0, 0.0, 0.0, 0.0});

    f = normalize_magnitude(make({1.0, {0.0, 2.0}, -2.0, 0.0}));
    const std::vector<double> expect{0.2, 0.4, 0.4, 0.0};
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(f.values[i] == doctest::Approx(expect[i]).epsilon(1e-12));

    CHECK_THROWS_AS(normalize_magnitude(make(ComplexVector(4))), std::domain_error);
}

TEST_CASE("normalized magnitude is a scale invariant distribution")
{
    for (std::uint64_t seed = 0; seed < 50; ++seed)
    {
        const auto est = random_estimate(48, seed);
        for (std::size_t m : {1u, 4u, 16u, 48u})
        {
            const auto f = normalize_magnitude(select_subcarriers(est, m));
            CHECK(std::abs(sum(f.values) - 1.0) <= 1e-9);
            CHECK(std::all_of(f.values.begin(), f.values.end(), [](double v) { return v >= 0.0; }));
        }
        Rng rng(seed + 1000);
        const Complex c = rng.complex_normal(100.0);
        auto scaled = est;
        for (auto &g : scaled.gains)
            g *= c;
        const auto a = normalize_magnitude(est), b = normalize_magnitude(scaled);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::abs(a.values[i] - b.values[i]) <= 1e-9);
    }
}

TEST_CASE("normalized magnitude is permutation equivariant")
{
    const auto est = random_estimate(16, 5);
    auto permuted = est;
    std::reverse(permuted.gains.begin(), permuted.gains.end());
    auto a = normalize_magnitude(est).values, b = normalize_magnitude(permuted).values;
    std::reverse(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-15));
}

TEST_CASE("delta feature examples")
{
    auto d = delta_feature(make({2.0, 0.0}, 1), make({1.0, 0.0}, 0));
    CHECK(d.kind == FeatureKind::Delta);
    CHECK(d.values == std::vector<double>{1.0, 0.0});
    CHECK(d.source_time == 1);

    d = delta_feature(make({{1.0, 1.0}, 0.0}, 5), make({0.0, 1.0}, 4));
    CHECK(d.values[0] == doctest::Approx(std::sqrt(2.0)));
    CHECK(d.values[1] == doctest::Approx(1.0));

    d = delta_feature(make({{1.0, 1.0}, 0.0}, 5), make({0.0, 1.0}, 4), DeltaMapping::RealImag);
    CHECK(d.values == std::vector<double>{1.0, 1.0, -1.0, 0.0});
}

TEST_CASE("delta of identical estimates is zero")
{
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        auto cur = random_estimate(16, seed);
        auto prev = cur;
        cur.time_index = prev.time_index + 1;
        for (double v : delta_feature(cur, prev).values)
            CHECK(v == 0.0);
    }
}

TEST_CASE("delta feature preconditions")
{
    CHECK_THROWS_AS(delta_feature(make({1.0, 2.0}, 1), make({1.0}, 0)), std::invalid_argument);
    CHECK_THROWS_AS(delta_feature(make({1.0}, 3), make({1.0}, 3)), std::invalid_argument);
    CHECK_THROWS_AS(delta_feature(make({1.0}, 2), make({1.0}, 3)), std::invalid_argument);
}
