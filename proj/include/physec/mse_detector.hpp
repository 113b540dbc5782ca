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

#include <optional>
#include <span>

#include "physec/features.hpp"
#include "physec/gmm_detector.hpp"

namespace physec {

// Reference the baseline compares each new feature against.
enum class MseReference {
    TrackAccepted, // last feature accepted as legitimate
    TrainingMean   // fixed mean of the training features
};

/// Mean-squared-error baseline detector.
struct MseDetectorState {
    FeatureVector reference;
    std::optional<double> threshold; // upper bound on the MSE of a legitimate message
    MseReference mode = MseReference::TrackAccepted;
};

/// (1/M) sum (a - b)^2
double mse_score(const FeatureVector &a, const FeatureVector &b);
double mse_score(const MseDetectorState &state, const FeatureVector &feature);

/// Upper-tail calibration: at most target_fa of the legitimate scores exceed the result.
double calibrate_mse_threshold(std::span<const double> bob_scores, double target_fa);

/// Builds a calibrated detector from legitimate training features (at least two when tracking).
MseDetectorState train_mse(std::span<const FeatureVector> training, double target_fa,
                           MseReference mode = MseReference::TrackAccepted);

// H0 iff score <= threshold. Decision::score carries the MSE. An accepted
// feature becomes the new reference when tracking.
Decision classify_mse(MseDetectorState &state, const FeatureVector &feature);

} // namespace physec
