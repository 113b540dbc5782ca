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

#include "physec/gmm_detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "physec/random.hpp"

namespace physec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-component constants reused across every density evaluation.
struct ComponentCache {
    std::vector<double> log_weight;
    std::vector<double> log_norm;
    std::vector<std::vector<double>> inv_var;

    explicit ComponentCache(const GmmModel &m)
    {
        const std::size_t K = m.num_components();
        const std::size_t d = m.dimension();
        log_weight.resize(K);
        log_norm.resize(K);
        inv_var.assign(K, std::vector<double>(d));
        for (std::size_t k = 0; k < K; ++k)
        {
            log_weight[k] = m.weights[k] > 0.0 ? std::log(m.weights[k]) : kNegInf;
            double acc = 0.0;
            for (std::size_t j = 0; j < d; ++j)
            {
                acc += std::log(2.0 * std::numbers::pi * m.variances[k][j]);
                inv_var[k][j] = 1.0 / m.variances[k][j];
            }
            log_norm[k] = -0.5 * acc;
        }
    }

    // Fills log(w_k N_k(x)) for every k and returns log sum_k w_k N_k(x).
    double joint(const GmmModel &m, std::span<const double> x, std::span<double> out) const
    {
        const std::size_t K = m.num_components();
        double peak = kNegInf;      // over log(w_k N_k)
        double peak_dens = kNegInf; // over log N_k
        for (std::size_t k = 0; k < K; ++k)
        {
            if (log_weight[k] == kNegInf)
            {
                out[k] = kNegInf;
                continue;
            }
            const auto &mu = m.means[k];
            const auto &iv = inv_var[k];
            double q = 0.0;
            for (std::size_t j = 0; j < x.size(); ++j)
            {
                const double diff = x[j] - mu[j];
                q += diff * diff * iv[j];
            }
            out[k] = log_norm[k] - 0.5 * q;
            peak_dens = std::max(peak_dens, out[k]);
        }
        // Weights stay in the linear domain so that a single component, or
        // several identical ones, reproduce the Gaussian log-density exactly.
        double linear = 0.0;
        for (std::size_t k = 0; k < K; ++k)
        {
            if (out[k] == kNegInf)
                continue;
            linear += m.weights[k] * std::exp(out[k] - peak_dens);
            out[k] += log_weight[k];
            peak = std::max(peak, out[k]);
        }
        if (linear >= std::numeric_limits<double>::min())
            return peak_dens + std::log(linear);
        double sum = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            if (out[k] != kNegInf)
                sum += std::exp(out[k] - peak);
        return peak + std::log(sum);
    }
};

void check_dimensions(std::span<const FeatureVector> data, std::size_t d)
{
    for (const auto &f : data)
        if (f.size() != d)
            throw std::invalid_argument("Training features have inconsistent dimensions.");
}

// E-step: responsibilities into `resp` (n x K, row-major); returns the total log-likelihood.
double expectation(const GmmModel &m, std::span<const FeatureVector> data, std::vector<double> &resp)
{
    const std::size_t K = m.num_components();
    const ComponentCache cache(m);
    resp.resize(data.size() * K);
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i)
    {
        std::span<double> row(resp.data() + i * K, K);
        const double lse = cache.joint(m, data[i].values, row);
        for (auto &r : row)
            r = r == kNegInf ? 0.0 : std::exp(r - lse);
        total += lse;
    }
    return total;
}

void maximization(GmmModel &m, std::span<const FeatureVector> data, const std::vector<double> &resp, double floor)
{
    const std::size_t K = m.num_components();
    const std::size_t d = m.dimension();
    const double n = static_cast<double>(data.size());

    double weight_total = 0.0;
    for (std::size_t k = 0; k < K; ++k)
    {
        double nk = 0.0;
        std::vector<double> mean(d, 0.0);
        for (std::size_t i = 0; i < data.size(); ++i)
        {
            const double r = resp[i * K + k];
            nk += r;
            for (std::size_t j = 0; j < d; ++j)
                mean[j] += r * data[i].values[j];
        }
        if (!(nk > 0.0))
        {
            // Empty component: zero weight, parameters frozen.
            m.weights[k] = 0.0;
            continue;
        }
        for (auto &v : mean)
            v /= nk;

        std::vector<double> var(d, 0.0);
        for (std::size_t i = 0; i < data.size(); ++i)
        {
            const double r = resp[i * K + k];
            for (std::size_t j = 0; j < d; ++j)
            {
                const double diff = data[i].values[j] - mean[j];
                var[j] += r * diff * diff;
            }
        }
        for (auto &v : var)
            v = std::max(v / nk, floor);

        m.weights[k] = nk / n;
        m.means[k] = std::move(mean);
        m.variances[k] = std::move(var);
        weight_total += m.weights[k];
    }
    for (auto &w : m.weights)
        w /= weight_total;
}

GmmModel seed_model(std::span<const FeatureVector> data, const DetectorConfig &config)
{
    const std::size_t n = data.size();
    const std::size_t d = data.front().size();
    const std::size_t K = config.num_components;
    Rng rng(config.rng_seed);

    // k-means++ seeding of the means
    std::vector<std::size_t> centers;
    centers.push_back(static_cast<std::size_t>(rng.below(n)));
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    while (centers.size() < K)
    {
        const auto &c = data[centers.back()].values;
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
        {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j)
            {
                const double diff = data[i].values[j] - c[j];
                s += diff * diff;
            }
            dist[i] = std::min(dist[i], s);
            total += dist[i];
        }
        std::size_t pick = 0;
        if (total > 0.0)
        {
            double u = rng.uniform() * total;
            pick = n - 1;
            for (std::size_t i = 0; i < n; ++i)
            {
                u -= dist[i];
                if (u < 0.0)
                {
                    pick = i;
                    break;
                }
            }
        }
        else
        {
            pick = static_cast<std::size_t>(rng.below(n));
        }
        centers.push_back(pick);
    }

    std::vector<double> mean(d, 0.0), var(d, 0.0);
    for (const auto &f : data)
        for (std::size_t j = 0; j < d; ++j)
            mean[j] += f.values[j];
    for (auto &v : mean)
        v /= static_cast<double>(n);
    for (const auto &f : data)
        for (std::size_t j = 0; j < d; ++j)
            var[j] += (f.values[j] - mean[j]) * (f.values[j] - mean[j]);
    for (auto &v : var)
        v = std::max(v / static_cast<double>(n), config.variance_floor);

    GmmModel m;
    m.variance_floor = config.variance_floor;
    m.weights.assign(K, 1.0 / static_cast<double>(K));
    for (auto c : centers)
    {
        m.means.push_back(data[c].values);
        m.variances.push_back(var);
    }
    return m;
}

// Up to `count` draws from the mixture whose log-likelihood falls below `threshold`.
std::vector<FeatureVector> sample_below(const GmmModel &m, double threshold, std::size_t count, Rng &rng)
{
    constexpr std::size_t kMaxDraws = 1'000'000;
    const ComponentCache cache(m);
    std::vector<double> joint(m.num_components());
    std::vector<FeatureVector> out;
    FeatureVector x;
    x.values.resize(m.dimension());
    for (std::size_t draw = 0; draw < kMaxDraws && out.size() < count; ++draw)
    {
        double u = rng.uniform();
        std::size_t k = 0;
        while (k + 1 < m.num_components() && u >= m.weights[k])
            u -= m.weights[k++];
        for (std::size_t j = 0; j < x.values.size(); ++j)
            x.values[j] = m.means[k][j] + std::sqrt(m.variances[k][j]) * rng.normal();
        if (cache.joint(m, x.values, joint) < threshold)
            out.push_back(x);
    }
    return out;
}

} // namespace

void GmmModel::validate() const
{
    const std::size_t K = num_components();
    if (K == 0)
        throw std::invalid_argument("Mixture has no components.");
    if (means.size() != K || variances.size() != K)
        throw std::invalid_argument("Mixture parameter counts disagree.");
    const std::size_t d = dimension();
    if (d == 0)
        throw std::invalid_argument("Mixture dimension must be positive.");
    if (!(variance_floor > 0.0))
        throw std::invalid_argument("Variance floor must be positive.");
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k)
    {
        if (!(weights[k] >= 0.0) || !std::isfinite(weights[k]))
            throw std::invalid_argument("Mixture weights must be finite and non-negative.");
        total += weights[k];
        if (means[k].size() != d || variances[k].size() != d)
            throw std::invalid_argument("Component dimensions disagree.");
        for (std::size_t j = 0; j < d; ++j)
        {
            if (!std::isfinite(means[k][j]))
                throw std::invalid_argument("Component means must be finite.");
            if (!(variances[k][j] >= variance_floor) || !std::isfinite(variances[k][j]))
                throw std::invalid_argument("Component variances must be finite and at least the floor.");
        }
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::invalid_argument("Mixture weights must sum to 1.");
    if (threshold && std::isnan(*threshold))
        throw std::invalid_argument("Threshold is NaN.");
}

void DetectorConfig::validate() const
{
    if (num_components < 1)
        throw std::invalid_argument("Number of mixture components must be at least 1.");
    if (max_em_iterations < 1)
        throw std::invalid_argument("EM needs at least one iteration.");
    if (!(convergence_tol >= 0.0))
        throw std::invalid_argument("Convergence tolerance must be non-negative.");
    if (!(variance_floor > 0.0))
        throw std::invalid_argument("Variance floor must be positive.");
    if (!(target_false_alarm > 0.0 && target_false_alarm < 1.0))
        throw std::invalid_argument("Target false-alarm rate must lie in (0, 1).");
    if (block_size < 1)
        throw std::invalid_argument("Block size must be at least 1.");
}

GmmModel refine(GmmModel model, std::span<const FeatureVector> training, const DetectorConfig &config,
                EmTrace *trace)
{
    config.validate();
    if (training.empty())
        throw std::invalid_argument("Training set is empty.");
    model.validate();
    check_dimensions(training, model.dimension());
    model.variance_floor = config.variance_floor;
    for (auto &var : model.variances)
        for (auto &v : var)
            v = std::max(v, config.variance_floor);

    const double n = static_cast<double>(training.size());
    std::vector<double> resp;
    EmTrace local;
    double previous = 0.0;
    for (std::size_t it = 0; it <= config.max_em_iterations; ++it)
    {
        const double ll = expectation(model, training, resp);
        local.mean_log_likelihood.push_back(ll / n);
        if (it > 0 && std::abs(ll - previous) <= config.convergence_tol * std::max(std::abs(previous), 1e-300))
        {
            local.converged = true;
            break;
        }
        if (it == config.max_em_iterations)
            break;
        maximization(model, training, resp, config.variance_floor);
        ++local.iterations;
        previous = ll;
    }
    model.trained_on = training.size();
    if (trace)
        *trace = std::move(local);
    return model;
}

GmmModel fit(std::span<const FeatureVector> training, const DetectorConfig &config, EmTrace *trace)
{
    config.validate();
    if (training.empty())
        throw std::invalid_argument("Training set is empty.");
    if (training.front().size() == 0)
        throw std::invalid_argument("Training features must have positive dimension.");
    check_dimensions(training, training.front().size());
    if (config.num_components > training.size())
        throw std::invalid_argument("More mixture components than training samples.");

    GmmModel model = refine(seed_model(training, config), training, config, trace);
    model.threshold = calibrate_threshold(log_likelihoods(model, training), config.target_false_alarm);
    return model;
}

double log_likelihood(const GmmModel &model, const FeatureVector &feature)
{
    if (feature.size() != model.dimension())
        throw std::invalid_argument("Feature dimension does not match the model.");
    const ComponentCache cache(model);
    std::vector<double> joint(model.num_components());
    return cache.joint(model, feature.values, joint);
}

std::vector<double> log_likelihoods(const GmmModel &model, std::span<const FeatureVector> features)
{
    const ComponentCache cache(model);
    std::vector<double> joint(model.num_components());
    std::vector<double> out;
    out.reserve(features.size());
    for (const auto &f : features)
    {
        if (f.size() != model.dimension())
            throw std::invalid_argument("Feature dimension does not match the model.");
        out.push_back(cache.joint(model, f.values, joint));
    }
    return out;
}

std::vector<double> responsibilities(const GmmModel &model, const FeatureVector &feature)
{
    if (feature.size() != model.dimension())
        throw std::invalid_argument("Feature dimension does not match the model.");
    const ComponentCache cache(model);
    std::vector<double> r(model.num_components());
    const double lse = cache.joint(model, feature.values, r);
    for (auto &v : r)
        v = v == kNegInf ? 0.0 : std::exp(v - lse);
    return r;
}

double calibrate_threshold(std::span<const double> bob_scores, double target_fa)
{
    if (bob_scores.empty())
        throw std::invalid_argument("Threshold calibration needs at least one score.");
    if (!(target_fa > 0.0 && target_fa < 1.0))
        throw std::invalid_argument("Target false-alarm rate must lie in (0, 1).");

    std::vector<double> sorted(bob_scores.begin(), bob_scores.end());
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    // Number of scores allowed strictly below the threshold.
    auto allowed = static_cast<std::size_t>(std::floor(target_fa * static_cast<double>(n)));
    if (static_cast<double>(allowed + 1) <= target_fa * static_cast<double>(n))
        ++allowed;
    return sorted[std::min(allowed, n - 1)];
}

Decision classify(const GmmModel &model, const FeatureVector &feature)
{
    if (!model.threshold)
        throw std::logic_error("Model threshold has not been calibrated.");
    Decision d;
    d.score = log_likelihood(model, feature);
    d.hypothesis = d.score >= *model.threshold ? Hypothesis::Bob : Hypothesis::NotBob;
    return d;
}

GmmModel update_block(const GmmModel &model, std::span<const FeatureVector> block, const DetectorConfig &config)
{
    if (!config.update_enabled)
        return model;
    if (!model.threshold)
        throw std::logic_error("Model threshold has not been calibrated.");
    if (block.size() != config.block_size)
        throw std::invalid_argument("Update block length does not match the configured block size.");

    const double threshold = *model.threshold;
    const auto scores = log_likelihoods(model, block);
    std::vector<FeatureVector> admitted;
    for (std::size_t i = 0; i < block.size(); ++i)
        if (scores[i] >= threshold)
            admitted.push_back(block[i]);
    if (admitted.size() < model.num_components())
        return model;

    // The rejected legitimate tail is unobserved; impute it from the current
    // model so that refit and recalibration see an untruncated sample.
    const double q = config.target_false_alarm;
    const auto missing = static_cast<std::size_t>(std::lround(q / (1.0 - q) * static_cast<double>(admitted.size())));
    Rng rng(derive_seed(config.rng_seed, 0x7461696cULL));
    const auto tail = sample_below(model, threshold, missing, rng);
    admitted.insert(admitted.end(), tail.begin(), tail.end());

    GmmModel updated = refine(model, admitted, config);
    updated.threshold = calibrate_threshold(log_likelihoods(updated, admitted), q);
    return updated;
}

GmmModel update_block_labeled(const GmmModel &model, std::span<const FeatureVector> bob_block,
                              const DetectorConfig &config)
{
    if (!config.update_enabled)
        return model;
    if (bob_block.size() < model.num_components())
        return model;

    GmmModel updated = refine(model, bob_block, config);
    updated.threshold = calibrate_threshold(log_likelihoods(updated, bob_block), config.target_false_alarm);
    return updated;
}

} // namespace physec
