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
#include <vector>

#include "physec/channel_model.hpp"

namespace physec {

enum class FeatureKind { NormalizedMagnitude, Delta };

// Real-valued mapping of the complex difference between two estimates.
enum class DeltaMapping {
    Magnitude, // |dH| per subcarrier, length M
    RealImag   // interleaved re/im parts, length 2M
};

/// Detector input derived from one channel estimate.
struct FeatureVector {
    std::vector<double> values;
    std::int64_t source_time = 0;
    FeatureKind kind = FeatureKind::NormalizedMagnitude;

    std::size_t size() const { return values.size(); }
    bool operator==(const FeatureVector &) const = default;
};

// Equally spaced indices floor(i * m_full / m), i = 0..m-1.
std::vector<std::size_t> subcarrier_indices(std::size_t m_full, std::size_t m);

ChannelRealization select_subcarriers(const ChannelRealization &estimate, std::size_t m);

/**
 * Magnitudes divided by their sum, so the output is a probability vector and
 * invariant to any complex scaling of the estimate.
 * Throws std::domain_error for an all-zero estimate.
 */
FeatureVector normalize_magnitude(const ChannelRealization &estimate);

/// Change between two consecutive estimates. Not normalized.
FeatureVector delta_feature(const ChannelRealization &current, const ChannelRealization &previous,
                            DeltaMapping mapping = DeltaMapping::Magnitude);

} // namespace physec
