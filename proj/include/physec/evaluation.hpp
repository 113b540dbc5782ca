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
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "physec/channel_model.hpp"
#include "physec/features.hpp"
#include "physec/gmm_detector.hpp"
#include "physec/mse_detector.hpp"
#include "physec/roc.hpp"
#include "physec/trace_io.hpp"

namespace physec {

enum class DetectorKind { Gmm, Mse };

// What the attacker does to its own channel before transmitting.
enum class AttackerFilter {
    Identity,        // no manipulation
    Custom,          // fixed ExperimentConfig::prefilter
    PerfectImitation // per message, maps the attacker channel exactly onto the legitimate one
};

inline const std::string kBobLink = "AB";
inline const std::string kEveLink = "AE";

/**
 * One end-to-end authentication experiment.
 *
 * Block 0 holds only legitimate messages and trains the detector. Every later
 * block is a test block: each message comes from the attacker with
 * probability attack_intensity. All links advance one estimation interval per
 * message.
 */
struct ExperimentConfig {
    std::size_t m_full = kDefaultSubcarriers;
    std::size_t m_subcarriers = 16;
    double snr_db = 20.0;
    double attack_intensity = 0.5;
    std::size_t num_blocks = 100;
    std::size_t block_size = 1000;
    double coherence_samples = std::numeric_limits<double>::infinity();
    std::size_t num_taps = 4;
    double tap_decay_db = 3.0;
    double rician_k = 0.0;

    DetectorKind detector = DetectorKind::Gmm;
    bool update_enabled = true;
    UpdateLabeling update_labeling = UpdateLabeling::DecisionDirected;
    std::size_t num_components = 3;
    double target_false_alarm = 0.01;
    FeatureKind feature_kind = FeatureKind::NormalizedMagnitude;
    DeltaMapping delta_mapping = DeltaMapping::Magnitude;
    MseReference mse_reference = MseReference::TrackAccepted;

    AttackerFilter attacker_filter = AttackerFilter::Identity;
    std::optional<Prefilter> prefilter;

    std::uint64_t rng_seed = 1;

    void validate() const;
    DetectorConfig detector_config() const;

    // 10 blocks of 200 messages.
    static ExperimentConfig desk_preset();
};

struct DetectionCounts {
    std::size_t true_detects = 0;    // attacker, rejected
    std::size_t false_alarms = 0;    // legitimate, rejected
    std::size_t misses = 0;          // attacker, accepted
    std::size_t correct_accepts = 0; // legitimate, accepted

    std::size_t attacker_messages() const { return true_detects + misses; }
    std::size_t legitimate_messages() const { return false_alarms + correct_accepts; }
    std::size_t total() const { return attacker_messages() + legitimate_messages(); }
    bool operator==(const DetectionCounts &) const = default;
};

struct BlockTrace {
    std::size_t block = 0;
    DetectionCounts counts;
    double threshold = 0.0; // threshold in force while the block was classified
    bool operator==(const BlockTrace &) const = default;
};

struct TrialResult {
    // Absent when the test phase contains no message of the respective source.
    std::optional<double> p_d;
    std::optional<double> p_fa;
    std::optional<double> p_md;
    double target_fa = 0.0;
    DetectionCounts counts;
    std::vector<BlockTrace> blocks;
    // Signed distance to the deciding threshold; positive means accepted as legitimate.
    std::vector<double> bob_margins;
    std::vector<double> eve_margins;

    double realized_fa() const { return p_fa.value_or(0.0); }
    // ROC over the pooled test margins (both sources must be present).
    RocCurve roc() const;
    // Detection rate at a realized false-alarm rate of at most `fa` on that ROC.
    std::optional<double> p_d_at(double fa) const;

    bool operator==(const TrialResult &) const = default;
};

/// Estimates of the legitimate and attacker links at one time step.
struct EstimatePair {
    ChannelRealization bob;
    std::optional<ChannelRealization> eve; // empty once a recording runs out of attacker records
};

class EstimateSource {
public:
    virtual ~EstimateSource() = default;
    virtual std::size_t m_full() const = 0;
    virtual EstimatePair next() = 0;
};

/// Simulated Alice-Bob and Alice-Eve links with independent fading.
class SimulatedSource final : public EstimateSource {
public:
    explicit SimulatedSource(const ExperimentConfig &config);
    std::size_t m_full() const override { return m_full_; }
    EstimatePair next() override;

private:
    std::size_t m_full_;
    AttackerFilter filter_mode_;
    std::optional<Prefilter> prefilter_;
    ChannelProcess bob_process_;
    ChannelProcess eve_process_;
    NoiseModel noise_;
    std::optional<ChannelRealization> bob_;
    std::optional<ChannelRealization> eve_;
};

/// Replays recorded estimates: the n-th step pairs the n-th record of each link.
class TraceSource final : public EstimateSource {
public:
    explicit TraceSource(const CsiTrace &trace, std::string bob_label = kBobLink, std::string eve_label = kEveLink);
    std::size_t m_full() const override { return m_full_; }
    EstimatePair next() override;

    std::size_t bob_records() const { return bob_.size(); }
    std::size_t eve_records() const { return eve_.size(); }

private:
    std::size_t m_full_;
    std::vector<ChannelRealization> bob_;
    std::vector<ChannelRealization> eve_;
    std::size_t position_ = 0;
};

TrialResult run_experiment(const ExperimentConfig &config);
TrialResult run_experiment(const ExperimentConfig &config, EstimateSource &source);

/// Simulated trace of both links over config.num_blocks * config.block_size steps.
CsiTrace simulate_trace(const ExperimentConfig &config);

/// One run per M with a shared seed, ordered as given.
std::vector<std::pair<std::size_t, TrialResult>> sweep_subcarriers(const ExperimentConfig &base,
                                                                   const std::vector<std::size_t> &m_values);

/// The same seeded scenario with (first) and without (second) block updates.
std::pair<TrialResult, TrialResult> compare_update_modes(const ExperimentConfig &base);

} // namespace physec
