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

#include "physec/evaluation.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "physec/number_format.hpp"
#include "physec/random.hpp"

namespace physec {

namespace {

enum Stream : std::uint64_t { kBobStream = 1, kEveStream = 2, kNoiseStream = 3, kAttackStream = 4, kDetectorStream = 5 };

// Turns estimates into detector inputs; delta features are taken against the
// last estimate accepted as legitimate.
class FeatureExtractor {
public:
    explicit FeatureExtractor(const ExperimentConfig &config) : config_(config) {}

    std::optional<FeatureVector> extract(const ChannelRealization &estimate, ChannelRealization &selected) const
    {
        selected = select_subcarriers(estimate, config_.m_subcarriers);
        if (config_.feature_kind == FeatureKind::NormalizedMagnitude)
            return normalize_magnitude(selected);
        if (!previous_)
            return std::nullopt;
        return delta_feature(selected, *previous_, config_.delta_mapping);
    }

    void accept(ChannelRealization selected) { previous_ = std::move(selected); }

private:
    const ExperimentConfig &config_;
    std::optional<ChannelRealization> previous_;
};

class Detector {
public:
    virtual ~Detector() = default;
    virtual void train(std::span<const FeatureVector> training) = 0;
    // Decision plus the signed margin to the deciding threshold (positive = legitimate).
    virtual std::pair<Decision, double> decide(const FeatureVector &feature) = 0;
    virtual void end_block(std::span<const FeatureVector> block, std::span<const FeatureVector> bob_block) = 0;
    virtual double threshold() const = 0;
};

class GmmDetector final : public Detector {
public:
    explicit GmmDetector(DetectorConfig config) : config_(std::move(config)) {}

    void train(std::span<const FeatureVector> training) override { model_ = fit(training, config_); }

    std::pair<Decision, double> decide(const FeatureVector &feature) override
    {
        const auto d = classify(model_, feature);
        return {d, d.score - *model_.threshold};
    }

    void end_block(std::span<const FeatureVector> block, std::span<const FeatureVector> bob_block) override
    {
        if (!config_.update_enabled)
            return;
        if (config_.update_labeling == UpdateLabeling::Oracle)
        {
            model_ = update_block_labeled(model_, bob_block, config_);
        }
        else
        {
            // The last block may be short when a recording ends early.
            auto cfg = config_;
            cfg.block_size = block.size();
            model_ = update_block(model_, block, cfg);
        }
    }

    double threshold() const override { return *model_.threshold; }

private:
    DetectorConfig config_;
    GmmModel model_;
};

class MseBaseline final : public Detector {
public:
    MseBaseline(double target_fa, MseReference mode) : target_fa_(target_fa), mode_(mode) {}

    void train(std::span<const FeatureVector> training) override { state_ = train_mse(training, target_fa_, mode_); }

    std::pair<Decision, double> decide(const FeatureVector &feature) override
    {
        const double thr = *state_.threshold;
        const auto d = classify_mse(state_, feature);
        return {d, thr - d.score};
    }

    void end_block(std::span<const FeatureVector>, std::span<const FeatureVector>) override {}

    double threshold() const override { return *state_.threshold; }

private:
    double target_fa_;
    MseReference mode_;
    MseDetectorState state_;
};

std::unique_ptr<Detector> make_detector(const ExperimentConfig &config)
{
    if (config.detector == DetectorKind::Gmm)
        return std::make_unique<GmmDetector>(config.detector_config());
    return std::make_unique<MseBaseline>(config.target_false_alarm, config.mse_reference);
}

void tally(DetectionCounts &c, bool from_eve, Hypothesis h)
{
    if (from_eve)
        ++(h == Hypothesis::NotBob ? c.true_detects : c.misses);
    else
        ++(h == Hypothesis::NotBob ? c.false_alarms : c.correct_accepts);
}

} // namespace

void ExperimentConfig::validate() const
{
    if (m_full < 1)
        throw std::invalid_argument("m_full must be at least 1.");
    if (m_subcarriers < 1 || m_subcarriers > m_full)
        throw std::invalid_argument("Number of subcarriers M must lie in [1, m_full].");
    if (!std::isfinite(snr_db))
        throw std::invalid_argument("SNR must be finite.");
    if (!(attack_intensity >= 0.0 && attack_intensity <= 1.0))
        throw std::invalid_argument("Attack intensity must lie in [0, 1].");
    if (num_blocks < 2)
        throw std::invalid_argument("At least one training and one test block are required.");
    if (block_size < 1)
        throw std::invalid_argument("Block size must be at least 1.");
    if (!(coherence_samples > 0.0))
        throw std::invalid_argument("Coherence time must be positive.");
    if (num_taps < 1 || num_taps > m_full)
        throw std::invalid_argument("Number of taps must lie in [1, m_full].");
    if (!std::isfinite(tap_decay_db))
        throw std::invalid_argument("Tap decay must be finite.");
    if (!(target_false_alarm > 0.0 && target_false_alarm < 1.0))
        throw std::invalid_argument("Target false-alarm rate must lie in (0, 1).");
    if (num_components < 1)
        throw std::invalid_argument("Number of mixture components must be at least 1.");
    const std::size_t training = feature_kind == FeatureKind::Delta ? block_size - 1 : block_size;
    if (detector == DetectorKind::Gmm && num_components > training)
        throw std::invalid_argument("Training block is smaller than the number of mixture components.");
    if (detector == DetectorKind::Mse && mse_reference == MseReference::TrackAccepted && training < 2)
        throw std::invalid_argument("Tracking MSE detector needs at least two training features.");
    if (attacker_filter == AttackerFilter::Custom && (!prefilter || prefilter->coefficients.size() != m_full))
        throw std::invalid_argument("Custom attacker filter needs m_full coefficients.");
}

DetectorConfig ExperimentConfig::detector_config() const
{
    DetectorConfig d;
    d.num_components = num_components;
    d.target_false_alarm = target_false_alarm;
    d.update_enabled = update_enabled;
    d.update_labeling = update_labeling;
    d.block_size = block_size;
    d.rng_seed = derive_seed(rng_seed, kDetectorStream);
    return d;
}

ExperimentConfig ExperimentConfig::desk_preset()
{
    ExperimentConfig c;
    c.num_blocks = 10;
    c.block_size = 200;
    return c;
}

RocCurve TrialResult::roc() const
{
    return compute_roc(bob_margins, eve_margins);
}

std::optional<double> TrialResult::p_d_at(double fa) const
{
    if (bob_margins.empty() || eve_margins.empty())
        return std::nullopt;
    return detection_at_false_alarm(roc(), fa);
}

SimulatedSource::SimulatedSource(const ExperimentConfig &config)
    : m_full_(config.m_full),
      filter_mode_(config.attacker_filter),
      prefilter_(config.prefilter),
      bob_process_(exponential_tap_powers(config.num_taps, config.tap_decay_db), config.coherence_samples,
                   derive_seed(config.rng_seed, kBobStream), config.rician_k),
      eve_process_(exponential_tap_powers(config.num_taps, config.tap_decay_db), config.coherence_samples,
                   derive_seed(config.rng_seed, kEveStream), config.rician_k),
      noise_(noise_variance_for_snr(config.snr_db), derive_seed(config.rng_seed, kNoiseStream))
{
    if (filter_mode_ == AttackerFilter::Custom && (!prefilter_ || prefilter_->coefficients.size() != m_full_))
        throw std::invalid_argument("Custom attacker filter needs m_full coefficients.");
}

EstimatePair SimulatedSource::next()
{
    if (!bob_)
    {
        bob_ = sample_initial_channel(bob_process_, m_full_, kBobLink);
        eve_ = sample_initial_channel(eve_process_, m_full_, kEveLink);
    }
    else
    {
        bob_ = evolve_channel(*bob_, bob_process_, 1);
        eve_ = evolve_channel(*eve_, eve_process_, 1);
    }

    ChannelRealization effective = *eve_;
    if (filter_mode_ == AttackerFilter::Custom)
        effective = apply_prefilter(effective, *prefilter_);
    else if (filter_mode_ == AttackerFilter::PerfectImitation)
        effective = apply_prefilter(effective, Prefilter::imitation(*bob_, *eve_));

    EstimatePair out;
    out.bob = estimate_channel(*bob_, noise_);
    out.eve = estimate_channel(effective, noise_);
    return out;
}

TraceSource::TraceSource(const CsiTrace &trace, std::string bob_label, std::string eve_label)
    : m_full_(trace.header.m_full)
{
    for (const auto &r : trace.records)
    {
        if (r.link_label == bob_label)
            bob_.push_back(to_realization(r));
        else if (r.link_label == eve_label)
            eve_.push_back(to_realization(r));
    }
}

EstimatePair TraceSource::next()
{
    if (position_ >= bob_.size())
        throw std::runtime_error("Trace has too few legitimate-link records for the requested experiment.");
    EstimatePair out;
    out.bob = bob_[position_];
    if (position_ < eve_.size())
        out.eve = eve_[position_];
    ++position_;
    return out;
}

TrialResult run_experiment(const ExperimentConfig &config)
{
    config.validate();
    SimulatedSource source(config);
    return run_experiment(config, source);
}

TrialResult run_experiment(const ExperimentConfig &config, EstimateSource &source)
{
    config.validate();
    if (source.m_full() < config.m_subcarriers)
        throw std::invalid_argument("Estimate source has fewer subcarriers than the requested M.");

    FeatureExtractor extractor(config);
    auto detector = make_detector(config);
    Rng attack(derive_seed(config.rng_seed, kAttackStream));

    // Block 0: legitimate messages only.
    std::vector<FeatureVector> training;
    training.reserve(config.block_size);
    for (std::size_t i = 0; i < config.block_size; ++i)
    {
        ChannelRealization selected;
        const auto pair = source.next();
        if (auto f = extractor.extract(pair.bob, selected))
            training.push_back(std::move(*f));
        extractor.accept(std::move(selected));
    }
    detector->train(training);

    TrialResult result;
    result.target_fa = config.target_false_alarm;
    std::vector<FeatureVector> block, bob_block;
    for (std::size_t b = 1; b < config.num_blocks; ++b)
    {
        BlockTrace trace;
        trace.block = b;
        trace.threshold = detector->threshold();
        block.clear();
        bob_block.clear();
        for (std::size_t i = 0; i < config.block_size; ++i)
        {
            const auto pair = source.next();
            const bool from_eve = attack.bernoulli(config.attack_intensity);
            if (from_eve && !pair.eve)
                throw std::runtime_error("Trace has too few attacker-link records for the requested experiment.");
            const ChannelRealization &estimate = from_eve ? *pair.eve : pair.bob;

            ChannelRealization selected;
            auto feature = extractor.extract(estimate, selected);
            if (!feature)
                throw std::logic_error("Test message without a reference estimate.");
            const auto [decision, margin] = detector->decide(*feature);
            if (decision.hypothesis == Hypothesis::Bob)
                extractor.accept(std::move(selected));

            tally(trace.counts, from_eve, decision.hypothesis);
            (from_eve ? result.eve_margins : result.bob_margins).push_back(margin);
            if (!from_eve)
                bob_block.push_back(*feature);
            block.push_back(std::move(*feature));
        }
        detector->end_block(block, bob_block);

        result.counts.true_detects += trace.counts.true_detects;
        result.counts.false_alarms += trace.counts.false_alarms;
        result.counts.misses += trace.counts.misses;
        result.counts.correct_accepts += trace.counts.correct_accepts;
        result.blocks.push_back(trace);
    }

    const auto &c = result.counts;
    if (c.attacker_messages() > 0)
    {
        result.p_d = static_cast<double>(c.true_detects) / static_cast<double>(c.attacker_messages());
        result.p_md = 1.0 - *result.p_d;
    }
    if (c.legitimate_messages() > 0)
        result.p_fa = static_cast<double>(c.false_alarms) / static_cast<double>(c.legitimate_messages());
    return result;
}

CsiTrace simulate_trace(const ExperimentConfig &config)
{
    config.validate();
    SimulatedSource source(config);
    CsiTrace trace;
    trace.header.m_full = config.m_full;
    trace.header.description = "simulated seed=" + std::to_string(config.rng_seed) + " snr_db=" +
                               format_double(config.snr_db);
    const std::size_t steps = config.num_blocks * config.block_size;
    trace.records.reserve(2 * steps);
    for (std::size_t t = 0; t < steps; ++t)
    {
        auto pair = source.next();
        trace.records.push_back(to_record(pair.bob));
        trace.records.push_back(to_record(*pair.eve));
    }
    return trace;
}

std::vector<std::pair<std::size_t, TrialResult>> sweep_subcarriers(const ExperimentConfig &base,
                                                                   const std::vector<std::size_t> &m_values)
{
    for (auto m : m_values)
    {
        auto c = base;
        c.m_subcarriers = m;
        c.validate();
    }

    std::vector<std::future<TrialResult>> runs;
    for (auto m : m_values)
    {
        auto c = base;
        c.m_subcarriers = m;
        runs.push_back(std::async(std::launch::async, [c] { return run_experiment(c); }));
    }
    std::vector<std::pair<std::size_t, TrialResult>> out;
    for (std::size_t i = 0; i < m_values.size(); ++i)
        out.emplace_back(m_values[i], runs[i].get());
    return out;
}

std::pair<TrialResult, TrialResult> compare_update_modes(const ExperimentConfig &base)
{
    if (!std::isfinite(base.coherence_samples))
        throw std::invalid_argument("Update comparison needs a finite coherence time.");
    auto with = base;
    with.update_enabled = true;
    auto without = base;
    without.update_enabled = false;
    with.validate();
    without.validate();

    auto a = std::async(std::launch::async, [with] { return run_experiment(with); });
    auto b = std::async(std::launch::async, [without] { return run_experiment(without); });
    return {a.get(), b.get()};
}

} // namespace physec
