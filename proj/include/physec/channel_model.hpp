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

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "physec/random.hpp"

namespace physec {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Default number of active subcarriers in the estimated frequency response.
inline constexpr std::size_t kDefaultSubcarriers = 48;

/// Frequency-domain gains of one (receiver, transmitter) link at one time instant.
struct ChannelRealization {
    ComplexVector gains;
    std::int64_t time_index = 0;
    std::string link_id;

    std::size_t size() const { return gains.size(); }
    bool operator==(const ChannelRealization &) const = default;
};

/// Normalized power-delay profile with `num_taps` taps decaying by `decay_db_per_tap`.
std::vector<double> exponential_tap_powers(std::size_t num_taps, double decay_db_per_tap);

/**
 * Temporal and multipath parameters of one link plus the random stream that
 * drives it.
 *
 * Each tap follows a first-order autoregressive process with correlation
 * exp(-steps / coherence_samples). An infinite coherence freezes the channel.
 * A Rician K-factor > 0 puts a fixed line-of-sight part on the first tap; the
 * remaining power stays Rayleigh distributed.
 *
 * Not safe for concurrent use: the random stream is mutated by every draw.
 */
class ChannelProcess {
public:
    ChannelProcess(std::vector<double> tap_powers, double coherence_samples, std::uint64_t rng_seed,
                   double rician_k = 0.0);

    std::size_t num_taps() const { return tap_powers_.size(); }
    const std::vector<double> &tap_powers() const { return tap_powers_; }
    double coherence_samples() const { return coherence_samples_; }
    double rician_k() const { return rician_k_; }
    std::uint64_t rng_seed() const { return rng_seed_; }

    // Correlation between tap values `steps` estimation intervals apart.
    double correlation(std::int64_t steps) const;

    // Fresh draw of the scattered (zero-mean) part of every tap.
    ComplexVector draw_diffuse_taps();
    // Constant line-of-sight contribution across m_full subcarriers.
    ComplexVector line_of_sight(std::size_t m_full) const;
    // m_full-point DFT of the tap vector.
    ComplexVector frequency_response(std::span<const Complex> taps, std::size_t m_full);

private:
    std::vector<double> tap_powers_;
    double coherence_samples_;
    double rician_k_;
    std::uint64_t rng_seed_;
    Rng rng_;
    std::size_t twiddle_size_ = 0;
    ComplexVector twiddles_; // e^{-j 2 pi k / m_full}
};

/// Estimation noise source (variance per complex subcarrier gain).
class NoiseModel {
public:
    NoiseModel(double noise_variance, std::uint64_t rng_seed);

    double noise_variance() const { return noise_variance_; }
    std::uint64_t rng_seed() const { return rng_seed_; }

    Complex draw() { return rng_.complex_normal(noise_variance_); }

private:
    double noise_variance_;
    std::uint64_t rng_seed_;
    Rng rng_;
};

/// Noise variance that yields `snr_db` against a unit-power channel.
double noise_variance_for_snr(double snr_db);

/// Per-subcarrier complex filter an attacker applies to its transmissions.
struct Prefilter {
    ComplexVector coefficients;

    static Prefilter identity(std::size_t m_full);
    // Coefficients that map `attacker` onto `target` subcarrier by subcarrier.
    static Prefilter imitation(const ChannelRealization &target, const ChannelRealization &attacker);
};

/**
 * Draws the initial frequency response of a link: num_taps independent
 * circularly-symmetric Gaussian taps with variances tap_powers, transformed by
 * an m_full-point DFT. Average per-subcarrier power is 1.
 */
ChannelRealization sample_initial_channel(ChannelProcess &process, std::size_t m_full, std::string link_id = {});

/// Advances the channel by `steps` estimation intervals.
ChannelRealization evolve_channel(const ChannelRealization &current, ChannelProcess &process, std::int64_t steps);

/// Noisy estimate H + e of a true channel.
ChannelRealization estimate_channel(const ChannelRealization &truth, NoiseModel &noise);

ChannelRealization apply_prefilter(const ChannelRealization &channel, const Prefilter &filter);

} // namespace physec
