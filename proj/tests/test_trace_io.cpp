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
#include <cstring>
#include <filesystem>
#include <limits>
#include <sstream>

#include "physec/trace_io.hpp"

using namespace physec;

namespace {

CsiTrace random_trace(std::size_t m_full, std::size_t steps, std::uint64_t seed)
{
    Rng rng(seed);
    CsiTrace t;
    t.header.m_full = m_full;
    t.header.description = "bench, office";
    for (std::size_t i = 0; i < steps; ++i)
        for (const char *link : {"AB", "AE"})
        {
            CsiRecord r{static_cast<std::int64_t>(i), link, ComplexVector(m_full)};
            for (auto &g : r.gains)
                g = rng.complex_normal(1.0) * std::pow(10.0, 8.0 * rng.uniform() - 4.0);
            t.records.push_back(r);
        }
    return t;
}

std::string serialize(const CsiTrace &t)
{
    std::ostringstream os;
    write_trace(t, os);
    return os.str();
}

CsiTrace parse(const std::string &text)
{
    std::istringstream is(text);
    return read_trace(is);
}

} // namespace

TEST_CASE("minimal trace parses")
{
    const auto t = parse("#CSI,m_full=4,interval_us=998.4,desc=demo\n3,AB,1,0,0,1,-1,0,0.5,-0.5\n");
    CHECK(t.header.m_full == 4);
    CHECK(t.header.sample_interval_us == 998.4);
    CHECK(t.header.description == "demo");
    REQUIRE(t.records.size() == 1);
    CHECK(t.records[0].time_index == 3);
    CHECK(t.records[0].link_label == "AB");
    CHECK(t.records[0].gains == ComplexVector{{1, 0}, {0, 1}, {-1, 0}, {0.5, -0.5}});
}

TEST_CASE("short record is rejected with its line number")
{
    try
    {
        parse("#CSI,m_full=4,interval_us=998.4,desc=\n0,AB,1,0,0,1,-1,0,0.5,-0.5\n1,AB,1,0,0,1,-1,0,0.5\n");
        FAIL("expected a trace error");
    }
    catch (const TraceError &e)
    {
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("line 3") != std::string::npos);
    }
}

TEST_CASE("malformed traces are rejected")
{
    const std::string head = "#CSI,m_full=1,interval_us=1,desc=x\n";
    const std::vector<std::string> bad = {
        "",
        "CSI,m_full=1,interval_us=1,desc=x\n",
        "#CSI,m_full=0,interval_us=1,desc=x\n",
        "#CSI,m_full=1,interval_us=-1,desc=x\n",
        "#CSI,interval_us=1,m_full=1,desc=x\n",
        head + "0,AB,1\n",
        head + "0,AB,1,0,2\n",
        head + "x,AB,1,0\n",
        head + "0,AB,1,nan\n",
        head + "0,AB,1,inf\n",
        head + "0,AB,1,0x1\n",
        head + "1,AB,1,0\n1,AB,1,0\n",
        head + "2,AB,1,0\n1,AB,1,0\n",
        head + "0,,1,0\n",
    };
    for (const auto &text : bad)
        CHECK_THROWS_AS(parse(text), TraceError);
    // Distinct links keep independent clocks.
    CHECK(parse(head + "1,AB,1,0\n1,AE,1,0\n0,X,2,0\n").records.size() == 3);
}

TEST_CASE("round trip is exact")
{
    const auto t = random_trace(6, 50, 3);
    const auto text = serialize(t);
    const auto back = parse(text);
    CHECK(back == t);
    CHECK(serialize(back) == text);
}

TEST_CASE("file round trip")
{
    const auto t = random_trace(48, 20, 5);
    const auto path = std::filesystem::temp_directory_path() / "physec_trace_io_roundtrip.csv";
    write_trace(t, path);
    CHECK(read_trace(path) == t);
    std::filesystem::remove(path);
    CHECK_THROWS(read_trace(path));
}

TEST_CASE("header-only trace")
{
    CsiTrace t;
    t.header.m_full = 8;
    const auto text = serialize(t);
    CHECK(text == "#CSI,m_full=8,interval_us=998.4,desc=\n");
    CHECK(parse(text) == t);
}

TEST_CASE("negative zero is written as 0")
{
    CsiTrace t;
    t.header.m_full = 2;
    t.records.push_back({0, "AB", {{-0.0, 0.0}, {1.5, -0.0}}});
    const auto text = serialize(t);
    CHECK(text.find("-0,") == std::string::npos);
    CHECK(text.substr(text.find('\n') + 1) == "0,AB,0,0,1.5,0\n");
    const auto back = parse(text);
    CHECK(back == t); // -0.0 == 0.0
    CHECK_FALSE(std::signbit(back.records[0].gains[0].real()));
    CHECK(serialize(back) == text);
}

TEST_CASE("writer refuses invalid traces")
{
    auto t = random_trace(2, 3, 1);
    t.records[1].gains.pop_back();
    std::ostringstream os;
    CHECK_THROWS_AS(write_trace(t, os), std::invalid_argument);
    t = random_trace(2, 3, 1);
    t.header.description = "two\nlines";
    CHECK_THROWS_AS(write_trace(t, os), std::invalid_argument);
}

TEST_CASE("records convert to realizations and back")
{
    ChannelRealization h{{{1.0, 2.0}, {-3.0, 0.25}}, 17, "AE"};
    const auto r = to_record(h);
    CHECK(r.time_index == 17);
    CHECK(r.link_label == "AE");
    CHECK(to_realization(r) == h);
}

TEST_CASE("parser survives fuzzed input")
{
    const auto seed_text = serialize(random_trace(3, 10, 7));
    Rng rng(99);
    const std::string alphabet = "0123456789,.-+eE#ABCSIm_ful=intervaldsc\n\r x";
    std::size_t accepted = 0;
    for (int trial = 0; trial < 5000; ++trial)
    {
        std::string text = seed_text;
        const std::size_t edits = 1 + rng.below(8);
        for (std::size_t e = 0; e < edits; ++e)
        {
            const std::size_t pos = rng.below(text.size());
            switch (rng.below(4))
            {
            case 0: text[pos] = alphabet[rng.below(alphabet.size())]; break;
            case 1: text.erase(pos, 1 + rng.below(5)); break;
            case 2: text.insert(pos, 1, alphabet[rng.below(alphabet.size())]); break;
            default: text[pos] = static_cast<char>(rng.below(256)); break;
            }
            if (text.empty())
                break;
        }
        try
        {
            const auto t = parse(text);
            CHECK_NOTHROW(t.validate());
            ++accepted;
        }
        catch (const TraceError &)
        {
        }
    }
    // Pure random bytes as well.
    for (int trial = 0; trial < 2000; ++trial)
    {
        std::string text(rng.below(200), '\0');
        for (auto &c : text)
            c = static_cast<char>(rng.below(256));
        if (trial % 2 == 0)
            text = "#CSI,m_full=1,interval_us=1,desc=\n" + text;
        try
        {
            parse(text);
        }
        catch (const TraceError &)
        {
        }
    }
    CHECK(accepted < 5000);
}
