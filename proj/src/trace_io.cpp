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

#include "physec/trace_io.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string_view>

#include "physec/number_format.hpp"

namespace physec {

namespace {

constexpr std::size_t kMaxSubcarriers = std::size_t{1} << 20;
constexpr std::string_view kMagic = "#CSI,";

bool valid_label(std::string_view s)
{
    if (s.empty())
        return false;
    for (char c : s)
        if (c == ',' || static_cast<unsigned char>(c) < 0x20 || c == 0x7f)
            return false;
    return true;
}

bool valid_description(std::string_view s)
{
    for (char c : s)
        if (c == '\n' || c == '\r')
            return false;
    return true;
}

// Consumes "<key>=<value>," from `rest` and returns <value>.
std::string_view take_field(std::string_view &rest, std::string_view key, std::size_t line)
{
    if (rest.substr(0, key.size()) != key || rest.size() <= key.size() || rest[key.size()] != '=')
        throw TraceError(line, "header field '" + std::string(key) + "' missing");
    rest.remove_prefix(key.size() + 1);
    const auto comma = rest.find(',');
    if (comma == std::string_view::npos)
        throw TraceError(line, "header field '" + std::string(key) + "' not terminated");
    const auto value = rest.substr(0, comma);
    rest.remove_prefix(comma + 1);
    return value;
}

CsiTraceHeader parse_header(std::string_view text, std::size_t line)
{
    if (text.substr(0, kMagic.size()) != kMagic)
        throw TraceError(line, "missing '#CSI' header");
    std::string_view rest = text.substr(kMagic.size());

    CsiTraceHeader h;
    const auto m_full = parse_int<std::size_t>(take_field(rest, "m_full", line));
    if (!m_full || *m_full == 0 || *m_full > kMaxSubcarriers)
        throw TraceError(line, "invalid m_full");
    h.m_full = *m_full;

    const auto interval = parse_double(take_field(rest, "interval_us", line));
    if (!interval || !(*interval > 0.0))
        throw TraceError(line, "invalid interval_us");
    h.sample_interval_us = *interval;

    if (rest.substr(0, 5) != "desc=")
        throw TraceError(line, "header field 'desc' missing");
    h.description = std::string(rest.substr(5));
    return h;
}

CsiRecord parse_record(std::string_view text, std::size_t m_full, std::size_t line)
{
    CsiRecord r;
    std::size_t field = 0;
    std::size_t start = 0;
    r.gains.reserve(m_full);
    double re = 0.0;
    while (true)
    {
        const auto comma = text.find(',', start);
        const auto token = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        if (field == 0)
        {
            const auto t = parse_int<std::int64_t>(token);
            if (!t)
                throw TraceError(line, "invalid time_index");
            r.time_index = *t;
        }
        else if (field == 1)
        {
            if (!valid_label(token))
                throw TraceError(line, "invalid link_label");
            r.link_label = std::string(token);
        }
        else
        {
            if (field - 2 >= 2 * m_full)
                throw TraceError(line, "dimension mismatch: more than " + std::to_string(2 * m_full) + " gain values");
            const auto v = parse_double(token);
            if (!v)
                throw TraceError(line, "invalid gain value '" + std::string(token.substr(0, 32)) + "'");
            if ((field - 2) % 2 == 0)
                re = *v;
            else
                r.gains.emplace_back(re, *v);
        }
        ++field;
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (field < 2)
        throw TraceError(line, "record needs time_index and link_label");
    if (field - 2 != 2 * m_full)
        throw TraceError(line, "dimension mismatch: expected " + std::to_string(2 * m_full) + " gain values, got " +
                                   std::to_string(field - 2));
    return r;
}

} // namespace

TraceError::TraceError(std::size_t line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

void CsiTrace::validate() const
{
    if (header.m_full == 0)
        throw std::invalid_argument("Trace m_full must be positive.");
    if (!(header.sample_interval_us > 0.0))
        throw std::invalid_argument("Trace sample interval must be positive.");
    if (!valid_description(header.description))
        throw std::invalid_argument("Trace description must be a single line.");
    std::map<std::string, std::int64_t, std::less<>> last;
    for (const auto &r : records)
    {
        if (r.gains.size() != header.m_full)
            throw std::invalid_argument("Trace record dimension does not match m_full.");
        if (!valid_label(r.link_label))
            throw std::invalid_argument("Invalid trace link label '" + r.link_label + "'.");
        for (const auto &g : r.gains)
            if (!std::isfinite(g.real()) || !std::isfinite(g.imag()))
                throw std::invalid_argument("Trace gains must be finite.");
        auto it = last.find(r.link_label);
        if (it != last.end() && r.time_index <= it->second)
            throw std::invalid_argument("Trace time indices must increase per link.");
        last[r.link_label] = r.time_index;
    }
}

CsiTrace read_trace(std::istream &in)
{
    CsiTrace trace;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    std::map<std::string, std::int64_t, std::less<>> last;

    while (std::getline(in, line))
    {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (!have_header)
        {
            trace.header = parse_header(line, line_no);
            have_header = true;
            continue;
        }
        auto record = parse_record(line, trace.header.m_full, line_no);
        auto it = last.find(record.link_label);
        if (it != last.end() && record.time_index <= it->second)
            throw TraceError(line_no, "time_index not increasing for link '" + record.link_label + "'");
        last[record.link_label] = record.time_index;
        trace.records.push_back(std::move(record));
    }
    if (in.bad())
        throw TraceError(line_no, "read failure");
    if (!have_header)
        throw TraceError(line_no == 0 ? 1 : line_no, "missing '#CSI' header");
    return trace;
}

CsiTrace read_trace(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("Cannot open trace file '" + path.string() + "'.");
    return read_trace(in);
}

void write_trace(const CsiTrace &trace, std::ostream &out)
{
    trace.validate();
    out << "#CSI,m_full=" << trace.header.m_full << ",interval_us=" << format_double(trace.header.sample_interval_us)
        << ",desc=" << trace.header.description << '\n';
    for (const auto &r : trace.records)
    {
        out << r.time_index << ',' << r.link_label;
        for (const auto &g : r.gains)
            out << ',' << format_double(g.real()) << ',' << format_double(g.imag());
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("Failed to write trace.");
}

void write_trace(const CsiTrace &trace, const std::filesystem::path &path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("Cannot open trace file '" + path.string() + "' for writing.");
    write_trace(trace, out);
}

CsiRecord to_record(const ChannelRealization &estimate)
{
    return CsiRecord{estimate.time_index, estimate.link_id, estimate.gains};
}

ChannelRealization to_realization(const CsiRecord &record)
{
    return ChannelRealization{record.gains, record.time_index, record.link_label};
}

} // namespace physec
