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

#include "physec/features.hpp"

#include <cmath>
#include <stdexcept>

namespace physec {

std::vector<std::size_t> subcarrier_indices(std::size_t m_full, std::size_t m)
{
    if (m < 1 || m > m_full)
        throw std::invalid_argument("Number of selected subcarriers must lie in [1, " + std::to_string(m_full) + "].");
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i)
        idx[i] = i * m_full / m;
    return idx;
}

ChannelRealization select_subcarriers(const ChannelRealization &estimate, std::size_t m)
{
    const auto idx = subcarrier_indices(estimate.size(), m);
    ChannelRealization out;
    out.time_index = estimate.time_index;
    out.link_id = estimate.link_id;
    out.gains.reserve(m);
    for (auto i : idx)
        out.gains.push_back(estimate.gains[i]);
    return out;
}

FeatureVector normalize_magnitude(const ChannelRealization &estimate)
{
    if (estimate.gains.empty())
        throw std::invalid_argument("Cannot normalize an empty estimate.");

    FeatureVector f;
    f.kind = FeatureKind::NormalizedMagnitude;
    f.source_time = estimate.time_index;
    f.values.resize(estimate.size());

    double total = 0.0;
    for (std::size_t l = 0; l < estimate.size(); ++l)
    {
        f.values[l] = std::abs(estimate.gains[l]);
        total += f.values[l];
    }
    if (!(total > 0.0))
        throw std::domain_error("All-zero channel estimate: magnitude normalization undefined.");
    for (auto &v : f.values)
        v /= total;
    return f;
}

FeatureVector delta_feature(const ChannelRealization &current, const ChannelRealization &previous,
                            DeltaMapping mapping)
{
    if (current.size() != previous.size())
        throw std::invalid_argument("Delta feature needs estimates of equal dimension.");
    if (current.time_index <= previous.time_index)
        throw std::invalid_argument("Delta feature needs a strictly later current estimate.");

    FeatureVector f;
    f.kind = FeatureKind::Delta;
    f.source_time = current.time_index;
    if (mapping == DeltaMapping::Magnitude)
    {
        f.values.resize(current.size());
        for (std::size_t l = 0; l < current.size(); ++l)
            f.values[l] = std::abs(current.gains[l] - previous.gains[l]);
    }
    else
    {
        f.values.resize(2 * current.size());
        for (std::size_t l = 0; l < current.size(); ++l)
        {
            const Complex d = current.gains[l] - previous.gains[l];
            f.values[2 * l] = d.real();
            f.values[2 * l + 1] = d.imag();
        }
    }
    return f;
}

} // namespace physec
