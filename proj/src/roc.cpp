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

#include "physec/roc.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <stdexcept>

namespace physec {

RocCurve compute_roc(std::span<const double> bob_scores, std::span<const double> eve_scores)
{
    if (bob_scores.empty() || eve_scores.empty())
        throw std::invalid_argument("ROC needs non-empty legitimate and attacker score lists.");

    std::vector<double> bob(bob_scores.begin(), bob_scores.end());
    std::vector<double> eve(eve_scores.begin(), eve_scores.end());
    std::sort(bob.begin(), bob.end());
    std::sort(eve.begin(), eve.end());

    std::vector<double> thresholds;
    thresholds.reserve(bob.size() + eve.size() + 1);
    std::merge(bob.begin(), bob.end(), eve.begin(), eve.end(), std::back_inserter(thresholds));
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    thresholds.push_back(std::numeric_limits<double>::infinity());

    const double nb = static_cast<double>(bob.size());
    const double ne = static_cast<double>(eve.size());
    std::size_t ib = 0, ie = 0;
    RocCurve roc;
    for (double t : thresholds)
    {
        while (ib < bob.size() && bob[ib] < t)
            ++ib;
        while (ie < eve.size() && eve[ie] < t)
            ++ie;
        const RocPoint p{static_cast<double>(ib) / nb, static_cast<double>(ie) / ne};
        if (!roc.points.empty() && roc.points.back().p_fa == p.p_fa)
            roc.points.back().p_d = std::max(roc.points.back().p_d, p.p_d);
        else
            roc.points.push_back(p);
    }
    return roc;
}

double area_under_curve(const RocCurve &roc)
{
    double area = 0.0;
    RocPoint prev{0.0, 0.0};
    for (const auto &p : roc.points)
    {
        area += (p.p_fa - prev.p_fa) * 0.5 * (p.p_d + prev.p_d);
        prev = p;
    }
    return area;
}

double detection_at_false_alarm(const RocCurve &roc, double max_fa)
{
    double best = 0.0;
    for (const auto &p : roc.points)
        if (p.p_fa <= max_fa)
            best = std::max(best, p.p_d);
    return best;
}

} // namespace physec
