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
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "physec/features.hpp"

namespace physec {

/// Diagonal-covariance Gaussian mixture over the legitimate transmitter's features.
struct GmmModel {
    std::vector<double> weights;
    std::vector<std::vector<double>> means;
    std::vector<std::vector<double>> variances;
    // Log-likelihood decision boundary; empty until calibrated.
    std::optional<double> threshold;
    std::size_t trained_on = 0;
    double variance_floor = 1e-8;

    std::size_t num_components() const { return weights.size(); }
    std::size_t dimension() const { return means.empty() ? 0 : means.front().size(); }

    // Throws std::invalid_argument if the parameters violate the mixture invariants.
    void validate() const;

    bool operator==(const GmmModel &) const = default;
};

// How update blocks are labeled before refitting.
enum class UpdateLabeling {
    DecisionDirected, // the current model's own H0 decisions
    Oracle            // ground-truth source labels
};

struct DetectorConfig {
    std::size_t num_components = 3;
    std::size_t max_em_iterations = 200;
    double convergence_tol = 1e-6; // relative change of the training log-likelihood
    double variance_floor = 1e-8;
    double target_false_alarm = 0.01;
    bool update_enabled = true;
    std::size_t block_size = 1000;
    std::uint64_t rng_seed = 0;
    UpdateLabeling update_labeling = UpdateLabeling::DecisionDirected;

    void validate() const;
};

enum class Hypothesis {
    Bob,   // H0: sent by the legitimate transmitter
    NotBob // H1: spoofed
};

struct Decision {
    Hypothesis hypothesis = Hypothesis::Bob;
    double score = 0.0;
};

// Mean per-sample training log-likelihood of every model EM evaluated.
struct EmTrace {
    std::vector<double> mean_log_likelihood;
    std::size_t iterations = 0;
    bool converged = false;
};

/**
 * Fits a K-component mixture to the training features with EM.
 *
 * Means are seeded k-means++ style from config.rng_seed, variances start at
 * the pooled per-dimension sample variance and weights at 1/K. After EM the
 * threshold is calibrated on the training scores at config.target_false_alarm.
 */
GmmModel fit(std::span<const FeatureVector> training, const DetectorConfig &config, EmTrace *trace = nullptr);

/// EM iterations started from `initial`. The threshold is carried over untouched.
GmmModel refine(GmmModel initial, std::span<const FeatureVector> training, const DetectorConfig &config,
                EmTrace *trace = nullptr);

/// log sum_k w_k N(x; mu_k, diag(var_k)), evaluated with log-sum-exp.
double log_likelihood(const GmmModel &model, const FeatureVector &feature);
std::vector<double> log_likelihoods(const GmmModel &model, std::span<const FeatureVector> features);

/// Posterior component probabilities of one feature.
std::vector<double> responsibilities(const GmmModel &model, const FeatureVector &feature);

/**
 * Lower-tail empirical quantile of legitimate scores: the largest t such that
 * the fraction of scores strictly below t does not exceed target_fa.
 */
double calibrate_threshold(std::span<const double> bob_scores, double target_fa);

/// H0 iff the log-likelihood reaches the model threshold (ties accepted).
Decision classify(const GmmModel &model, const FeatureVector &feature);

/**
 * Decision-directed block update.
 *
 * The block is scored with the current model and only samples decided H0 are
 * kept. Legitimate samples that fell below the threshold are never observed,
 * so a matching number of draws is taken from the current model's own
 * rejection region (seeded from config.rng_seed) to fill the censored tail.
 * EM is warm-started on the union and the threshold recalibrated on its new
 * scores. Returns the model unchanged when updates are disabled or fewer than
 * K samples are decided H0.
 */
GmmModel update_block(const GmmModel &model, std::span<const FeatureVector> block, const DetectorConfig &config);

/// Block update with ground-truth labels: warm-started refit on `bob_block`
/// and an empirical recalibration of the threshold on its new scores.
GmmModel update_block_labeled(const GmmModel &model, std::span<const FeatureVector> bob_block,
                              const DetectorConfig &config);

// Flat text serialization, lossless for every double.
void write_model(const GmmModel &model, std::ostream &out);
GmmModel read_model(std::istream &in);

} // namespace physec
