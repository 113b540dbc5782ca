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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "physec/channel_model.hpp"

namespace physec {

// Text format:
//   #CSI,m_full=<int>,interval_us=<real>,desc=<text>
//   <time_index>,<link_label>,<re0>,<im0>,...,<re(m_full-1)>,<im(m_full-1)>
// Numbers use the shortest decimal that round-trips; negative zero is "0".

inline constexpr double kDefaultSampleIntervalUs = 998.4;

struct CsiTraceHeader {
    std::size_t m_full = kDefaultSubcarriers;
    double sample_interval_us = kDefaultSampleIntervalUs;
    std::string description;
    bool operator==(const CsiTraceHeader &) const = default;
};

struct CsiRecord {
    std::int64_t time_index = 0;
    std::string link_label;
    ComplexVector gains;
    bool operator==(const CsiRecord &) const = default;
};

struct CsiTrace {
    CsiTraceHeader header;
    std::vector<CsiRecord> records;

    // Throws std::invalid_argument on a dimension or ordering violation.
    void validate() const;
    bool operator==(const CsiTrace &) const = default;
};

/// Parse failure; `line()` is 1-based.
class TraceError : public std::runtime_error {
public:
    TraceError(std::size_t line, const std::string &what);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

CsiTrace read_trace(std::istream &in);
CsiTrace read_trace(const std::filesystem::path &path);

void write_trace(const CsiTrace &trace, std::ostream &out);
void write_trace(const CsiTrace &trace, const std::filesystem::path &path);

CsiRecord to_record(const ChannelRealization &estimate);
ChannelRealization to_realization(const CsiRecord &record);

} // namespace physec
