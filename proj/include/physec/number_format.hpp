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

#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>

namespace physec {

// Shortest decimal that round-trips; negative zero is written as "0".
// Shortest round-trip decimal form; both signed zeros print as "0".
inline std::string format_double(double v)
{
    if (v == 0.0)
        return "0";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// Parses the whole field as a finite double.
// Whole-field parse; rejects trailing text and non-finite values.
inline std::optional<double> parse_double(std::string_view s)
{
    double v = 0.0;
    if (s.empty())
        return std::nullopt;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        return std::nullopt;
    if (v != v || v - v != 0.0)
        return std::nullopt;
    return v;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view s)
{
    Int v{};
    if (s.empty())
        return std::nullopt;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        return std::nullopt;
    return v;
}

} // namespace physec
