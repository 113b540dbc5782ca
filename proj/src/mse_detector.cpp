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

#include "physec/mse_detector.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace physec {

double mse_score(const FeatureVector &a, const FeatureVector &b)
{
    if (a.size() != b.size() || a.size() == 0)
        throw std::invalid_argument("MSE needs non-empty features of equal dimension.");
    double acc = 0.0;
    for (std::size_t l = 0; l < a.size(); ++l)
    {
        const double d = a.values[l] - b.values[l];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double mse_score(const MseDetectorState &state, const FeatureVector &feature)
{
    return mse_score(feature, state.reference);
}

double calibrate_mse_threshold(std::span<const double> bob_scores, double target_fa)
{
    // Same quantile rule as the likelihood detector, applied to negated errors.
    std::vector<double> negated(bob_scores.begin(), bob_scores.end());
    for (auto &s : negated)
        s = -s;
    return -calibrate_threshold(negated, target_fa);
}

MseDetectorState train_mse(std::span<const FeatureVector> training, double target_fa, MseReference mode)
{
    if (training.empty())
        throw std::invalid_argument("MSE training set is empty.");
    const std::size_t d = training.front().size();
    for (const auto &f : training)
        if (f.size() != d)
            throw std::invalid_argument("Training features have inconsistent dimensions.");

    MseDetectorState state;
    state.mode = mode;
    std::vector<double> scores;
    if (mode == MseReference::TrackAccepted)
    {
        if (training.size() < 2)
            throw std::invalid_argument("Tracking MSE calibration needs at least two training features.");
        for (std::size_t i = 1; i < training.size(); ++i)
            scores.push_back(mse_score(training[i], training[i - 1]));
        state.reference = training.back();
    }
    else
    {
        FeatureVector mean = training.front();
        std::fill(mean.values.begin(), mean.values.end(), 0.0);
        for (const auto &f : training)
            for (std::size_t l = 0; l < d; ++l)
                mean.values[l] += f.values[l];
        for (auto &v : mean.values)
            v /= static_cast<double>(training.size());
        for (const auto &f : training)
            scores.push_back(mse_score(f, mean));
        state.reference = std::move(mean);
    }
    state.threshold = calibrate_mse_threshold(scores, target_fa);
    return state;
}

Decision classify_mse(MseDetectorState &state, const FeatureVector &feature)
{
    if (!state.threshold)
        throw std::logic_error("MSE detector threshold has not been calibrated.");
    Decision d;
    d.score = mse_score(state, feature);
    d.hypothesis = d.score <= *state.threshold ? Hypothesis::Bob : Hypothesis::NotBob;
    if (d.hypothesis == Hypothesis::Bob && state.mode == MseReference::TrackAccepted)
        state.reference = feature;
    return d;
}

} // namespace physec
