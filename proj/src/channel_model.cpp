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

#include "physec/channel_model.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace physec {

std::vector<double> exponential_tap_powers(std::size_t num_taps, double decay_db_per_tap)
{
    if (num_taps == 0)
        throw std::invalid_argument("Power-delay profile needs at least one tap.");

    std::vector<double> powers(num_taps);
    for (std::size_t n = 0; n < num_taps; ++n)
        powers[n] = std::pow(10.0, -decay_db_per_tap * static_cast<double>(n) / 10.0);
    const double total = std::accumulate(powers.begin(), powers.end(), 0.0);
    for (auto &p : powers)
        p /= total;
    return powers;
}

ChannelProcess::ChannelProcess(std::vector<double> tap_powers, double coherence_samples, std::uint64_t rng_seed,
                               double rician_k)
    : tap_powers_(std::move(tap_powers)),
      coherence_samples_(coherence_samples),
      rician_k_(rician_k),
      rng_seed_(rng_seed),
      rng_(rng_seed)
{
    if (tap_powers_.empty())
        throw std::invalid_argument("Channel process needs at least one tap.");
    double total = 0.0;
    for (double p : tap_powers_)
    {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw std::invalid_argument("Tap powers must be finite and non-negative.");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("Tap powers must sum to 1.");
    if (!(coherence_samples_ > 0.0))
        throw std::invalid_argument("Coherence time must be positive.");
    if (!(rician_k_ >= 0.0) || !std::isfinite(rician_k_))
        throw std::invalid_argument("Rician K-factor must be finite and non-negative.");
}

double ChannelProcess::correlation(std::int64_t steps) const
{
    if (std::isinf(coherence_samples_))
        return 1.0;
    return std::exp(-static_cast<double>(steps) / coherence_samples_);
}

ComplexVector ChannelProcess::draw_diffuse_taps()
{
    const double diffuse_share = 1.0 / (1.0 + rician_k_);
    ComplexVector taps(tap_powers_.size());
    for (std::size_t n = 0; n < taps.size(); ++n)
    {
        const double variance = n == 0 ? tap_powers_[0] * diffuse_share : tap_powers_[n];
        taps[n] = rng_.complex_normal(variance);
    }
    return taps;
}

ComplexVector ChannelProcess::line_of_sight(std::size_t m_full) const
{
    const double amplitude = std::sqrt(tap_powers_[0] * rician_k_ / (1.0 + rician_k_));
    return ComplexVector(m_full, Complex(amplitude, 0.0));
}

ComplexVector ChannelProcess::frequency_response(std::span<const Complex> taps, std::size_t m_full)
{
    if (twiddle_size_ != m_full)
    {
        twiddles_.resize(m_full);
        for (std::size_t k = 0; k < m_full; ++k)
            twiddles_[k] = std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m_full));
        twiddle_size_ = m_full;
    }

    ComplexVector response(m_full, Complex(0.0, 0.0));
    for (std::size_t l = 0; l < m_full; ++l)
    {
        Complex acc(0.0, 0.0);
        for (std::size_t n = 0; n < taps.size(); ++n)
            acc += taps[n] * twiddles_[(n * l) % m_full];
        response[l] = acc;
    }
    return response;
}

ChannelRealization sample_initial_channel(ChannelProcess &process, std::size_t m_full, std::string link_id)
{
    if (m_full < process.num_taps())
        throw std::invalid_argument("Number of subcarriers must not be smaller than the number of taps.");

    const auto taps = process.draw_diffuse_taps();
    ChannelRealization out;
    out.gains = process.frequency_response(taps, m_full);
    if (process.rician_k() > 0.0)
    {
        const auto los = process.line_of_sight(m_full);
        for (std::size_t l = 0; l < m_full; ++l)
            out.gains[l] += los[l];
    }
    out.time_index = 0;
    out.link_id = std::move(link_id);
    return out;
}

ChannelRealization evolve_channel(const ChannelRealization &current, ChannelProcess &process, std::int64_t steps)
{
    if (steps < 1)
        throw std::invalid_argument("Channel evolution needs at least one step.");
    const std::size_t m_full = current.size();
    if (m_full < process.num_taps())
        throw std::invalid_argument("Channel realization is shorter than the power-delay profile.");

    ChannelRealization out = current;
    out.time_index = current.time_index + steps;

    const double rho = process.correlation(steps);
    if (rho == 1.0)
        return out;

    // The DFT is linear, so the per-tap AR(1) recursion carries over to the
    // frequency response unchanged.
    const double innovation_scale = std::sqrt(-std::expm1(-2.0 * static_cast<double>(steps) / process.coherence_samples()));
    const auto innovation = process.frequency_response(process.draw_diffuse_taps(), m_full);
    const auto los = process.line_of_sight(m_full);
    for (std::size_t l = 0; l < m_full; ++l)
        out.gains[l] = los[l] + rho * (current.gains[l] - los[l]) + innovation_scale * innovation[l];
    return out;
}

NoiseModel::NoiseModel(double noise_variance, std::uint64_t rng_seed)
    : noise_variance_(noise_variance), rng_seed_(rng_seed), rng_(rng_seed)
{
    if (!(noise_variance_ >= 0.0) || !std::isfinite(noise_variance_))
        throw std::invalid_argument("Noise variance must be finite and non-negative.");
}

double noise_variance_for_snr(double snr_db)
{
    return std::pow(10.0, -snr_db / 10.0);
}

ChannelRealization estimate_channel(const ChannelRealization &truth, NoiseModel &noise)
{
    ChannelRealization out = truth;
    if (noise.noise_variance() == 0.0)
        return out;
    for (auto &g : out.gains)
        g += noise.draw();
    return out;
}

Prefilter Prefilter::identity(std::size_t m_full)
{
    return Prefilter{ComplexVector(m_full, Complex(1.0, 0.0))};
}

Prefilter Prefilter::imitation(const ChannelRealization &target, const ChannelRealization &attacker)
{
    if (target.size() != attacker.size())
        throw std::invalid_argument("Imitation filter needs channels of equal dimension.");
    Prefilter f;
    f.coefficients.resize(target.size());
    for (std::size_t l = 0; l < target.size(); ++l)
    {
        if (attacker.gains[l] == Complex(0.0, 0.0))
            throw std::invalid_argument("Attacker channel has a zero gain; imitation filter undefined.");
        f.coefficients[l] = target.gains[l] / attacker.gains[l];
    }
    return f;
}

ChannelRealization apply_prefilter(const ChannelRealization &channel, const Prefilter &filter)
{
    if (filter.coefficients.size() != channel.size())
        throw std::invalid_argument("Prefilter length does not match the channel dimension.");
    ChannelRealization out = channel;
    for (std::size_t l = 0; l < out.size(); ++l)
        out.gains[l] *= filter.coefficients[l];
    return out;
}

} // namespace physec
