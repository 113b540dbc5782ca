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

#include <span>
#include <vector>

namespace physec {

struct RocPoint {
    double p_fa = 0.0;
    double p_d = 0.0;
    bool operator==(const RocPoint &) const = default;
};

/// Operating points ordered by strictly increasing false-alarm rate.
struct RocCurve {
    std::vector<RocPoint> points;
};

/**
 * Sweeps a threshold t over the pooled unique scores and +infinity. A score
 * below t is declared spoofed, so each t yields
 * (fraction of bob_scores below t, fraction of eve_scores below t).
 * Points sharing a false-alarm rate keep the highest detection rate.
 */
RocCurve compute_roc(std::span<const double> bob_scores, std::span<const double> eve_scores);

/// Trapezoidal area under the curve (with (0,0) prepended if missing).
double area_under_curve(const RocCurve &roc);

/// Best detection rate among points whose false-alarm rate does not exceed max_fa.
double detection_at_false_alarm(const RocCurve &roc, double max_fa);

} // namespace physec
